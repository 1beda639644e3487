import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xidist.accuracy import CacheChecksumError, CacheParseError, DomainError
from xidist.specfun import z_values
from xidist.zeros import (
    ZeroList,
    ZeroRecord,
    counting_estimate,
    find_zeros,
    load_cache,
    save_cache,
)

GAMMAS_FROZEN = [14.134725141734694, 21.022039638771555, 25.010857580145689]


def test_first_zero_alone():
    zl = find_zeros(15.0)
    assert len(zl) == 1
    assert abs(zl.records[0].gamma - GAMMAS_FROZEN[0]) < 1e-6


def test_first_three_zeros():
    zl = find_zeros(26.0)
    assert len(zl) == 3
    for rec, want in zip(zl.records, GAMMAS_FROZEN):
        assert abs(rec.gamma - want) < 1e-6


def test_exactly_29_below_100(small_zeros):
    assert small_zeros.count_below(100.0) == 29


def test_counting_estimate_at_100():
    assert abs(counting_estimate(100.0) - 29.0) < 1.0


def test_bracketing_invariant(small_zeros):
    g = small_zeros.gammas
    h = np.array([r.bracket_halfwidth for r in small_zeros.records])
    assert np.all(h <= 1e-9)
    assert np.all(z_values(g - h) * z_values(g + h) < 0.0)


def test_ordering_and_simplicity(small_zeros):
    g = small_zeros.gammas
    assert np.all(np.diff(g) > 1e-3)


def test_completeness_checkpoints(small_zeros):
    for t in (50.0, 100.0, 120.0):
        assert abs(small_zeros.count_below(t) - counting_estimate(t)) <= 1.0


def test_tmax_too_small():
    with pytest.raises(DomainError):
        find_zeros(10.0)


def test_indices_are_one_based(small_zeros):
    assert [r.index for r in small_zeros.records[:4]] == [1, 2, 3, 4]


def test_off_line_empty(small_zeros):
    assert small_zeros.off_line == ()


# ----------------------------------------------------------------- caching

def test_cache_round_trip(tmp_path, small_zeros):
    p = tmp_path / "zc.txt"
    save_cache(small_zeros, p)
    back = load_cache(p)
    assert len(back) == len(small_zeros)
    assert back.t_max == small_zeros.t_max
    # decimal text is the contract: resaving must be byte-identical
    p2 = tmp_path / "zc2.txt"
    save_cache(back, p2)
    assert p.read_bytes() == p2.read_bytes()


def test_cache_of_100_has_29_records(tmp_path):
    zl = find_zeros(100.0)
    p = tmp_path / "zc100.txt"
    save_cache(zl, p)
    assert len(load_cache(p)) == 29


def test_cache_header_line(tmp_path, small_zeros):
    p = tmp_path / "zc.txt"
    save_cache(small_zeros, p)
    first = p.read_text().splitlines()[0]
    assert first == f"xi-dist-zeros v1 t_max={small_zeros.t_max:.15g}"


def test_truncated_cache_raises_parse_error(tmp_path, small_zeros):
    p = tmp_path / "zc.txt"
    save_cache(small_zeros, p)
    lines = p.read_text().splitlines(keepends=True)
    (tmp_path / "trunc.txt").write_text("".join(lines[:-5]))
    with pytest.raises(CacheParseError):
        load_cache(tmp_path / "trunc.txt")


def test_tampered_cache_raises_checksum_error(tmp_path, small_zeros):
    p = tmp_path / "zc.txt"
    save_cache(small_zeros, p)
    text = p.read_text().replace("14.134725", "14.134726", 1)
    (tmp_path / "bad.txt").write_text(text)
    with pytest.raises(CacheChecksumError):
        load_cache(tmp_path / "bad.txt")


def test_malformed_record_line_number(tmp_path, small_zeros):
    p = tmp_path / "zc.txt"
    save_cache(small_zeros, p)
    lines = p.read_text().splitlines(keepends=True)
    lines[3] = "not a record\n"
    body = "".join(lines[:-1])
    import hashlib

    digest = hashlib.sha256(body.encode()).hexdigest()
    (tmp_path / "bad.txt").write_text(body + f"sha256={digest}\n")
    with pytest.raises(CacheParseError) as err:
        load_cache(tmp_path / "bad.txt")
    assert err.value.line == 4


@settings(max_examples=30, deadline=None)
@given(
    st.lists(
        st.floats(min_value=14.0, max_value=9999.0, allow_nan=False),
        min_size=1,
        max_size=12,
        unique=True,
    )
)
def test_cache_round_trip_synthetic(tmp_path_factory, gammas):
    gammas = sorted(gammas)
    if min(np.diff(gammas), default=1.0) <= 1e-6:
        return
    records = tuple(
        ZeroRecord(index=i + 1, gamma=g, bracket_halfwidth=1e-9) for i, g in enumerate(gammas)
    )
    zl = ZeroList(records=records, t_max=10000.0)
    p = tmp_path_factory.mktemp("zc") / "zc.txt"
    save_cache(zl, p)
    back = load_cache(p)
    assert len(back) == len(zl)
    for a, b in zip(back.records, zl.records):
        assert abs(a.gamma - b.gamma) <= 1e-10 * max(1.0, abs(b.gamma))


def test_off_line_records_survive_cache(tmp_path):
    on = (ZeroRecord(1, 14.134725141734694, 1e-9),)
    off = (ZeroRecord(1, 30.0, 1e-9, beta=0.75),)
    zl = ZeroList(records=on, t_max=40.0, off_line=off)
    p = tmp_path / "zc.txt"
    save_cache(zl, p)
    back = load_cache(p)
    assert len(back.off_line) == 1
    assert back.off_line[0].beta == 0.75


def test_zero_record_validation():
    with pytest.raises(ValueError):
        ZeroRecord(index=0, gamma=14.0, bracket_halfwidth=1e-9)
    with pytest.raises(ValueError):
        ZeroRecord(index=1, gamma=14.0, bracket_halfwidth=1e-9, beta=1.5)
    with pytest.raises(ValueError):
        ZeroList(records=(ZeroRecord(1, 20.0, 1e-9), ZeroRecord(2, 15.0, 1e-9)), t_max=25.0)
