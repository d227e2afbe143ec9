"""Gauss and DT codec round trips, conventions, and error reporting."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkwidth import (
    CodecError,
    Passage,
    canonical_dt,
    dt_equivalent,
    dt_to_gauss,
    gauss_to_dt,
    parse_dt,
    parse_gauss,
    serialize_dt,
    serialize_gauss,
)
from linkwidth.codec import rotate_component

from conftest import RANDOM_SMALL, TREFOIL


def roundtrip_gauss(text: str) -> str:
    return serialize_gauss(parse_gauss(text))


class TestGaussParsing:
    def test_trefoil_roundtrip(self):
        assert roundtrip_gauss(TREFOIL) == TREFOIL

    def test_signs_kept(self):
        assert roundtrip_gauss("O1+,U1+") == "O1+,U1+"
        assert roundtrip_gauss("O1-,U1-") == "O1-,U1-"

    def test_multi_component(self):
        assert roundtrip_gauss("O1,U2;U1,O2") == "O1,U2;U1,O2"

    def test_empty_code_is_single_circle(self):
        code = parse_gauss("")
        assert len(code.components) == 1
        assert code.components[0] == ()

    def test_empty_component_allowed(self):
        code = parse_gauss("O1,U2,O3,U1,O2,U3;")
        assert len(code.components) == 2
        assert code.components[1] == ()

    def test_whitespace_tolerated(self):
        assert roundtrip_gauss(" O1 , U2 ; U1 , O2 ") == "O1,U2;U1,O2"

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("O1,U2", "lacks an over or under"),
            ("O1,O1", "visited O twice"),
            ("Q", "offset 0"),
            ("O1,X2,U1,U2", "offset 3"),
            ("O0,U0", "must be positive"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(CodecError, match=fragment):
            parse_gauss(text)

    def test_random_codes_parse(self):
        for text in RANDOM_SMALL:
            assert roundtrip_gauss(text) == text


def _random_gauss_text(rng: random.Random, n: int, comps: int) -> str:
    visits = [(lab, Passage.OVER) for lab in range(1, n + 1)]
    visits += [(lab, Passage.UNDER) for lab in range(1, n + 1)]
    rng.shuffle(visits)
    cuts = sorted(rng.sample(range(1, 2 * n), comps - 1)) if comps > 1 else []
    parts = []
    prev = 0
    for cut in cuts + [2 * n]:
        chunk = visits[prev:cut]
        parts.append(",".join(f"{p.value}{lab}" for lab, p in chunk))
        prev = cut
    return ";".join(parts)


@given(st.integers(0, 2**32 - 1), st.integers(1, 9), st.integers(1, 3))
@settings(max_examples=120, deadline=None)
def test_gauss_roundtrip_fuzz(seed, n, comps):
    rng = random.Random(seed)
    comps = min(comps, 2 * n)
    text = _random_gauss_text(rng, n, comps)
    assert roundtrip_gauss(text) == text


class TestDtConventions:
    def test_trefoil_dt_to_gauss(self):
        # positive even label: the odd-numbered visit passes over
        code = dt_to_gauss(parse_dt("4 6 2"))
        assert serialize_gauss(code) == "O1,U2,O3,U1,O2,U3"

    def test_negative_label_flips_passage(self):
        code = dt_to_gauss(parse_dt("4 -6 2"))
        assert serialize_gauss(code) == "O1,U2,U3,U1,O2,O3"

    def test_gauss_to_dt_inverse(self):
        assert serialize_dt(gauss_to_dt(parse_gauss(TREFOIL))) == "4 6 2"

    def test_figure_eight_roundtrip(self):
        dt = parse_dt("4 6 8 2")
        assert serialize_dt(gauss_to_dt(dt_to_gauss(dt))) == "4 6 8 2"

    def test_multi_component_lengths(self):
        dt = parse_dt("lengths:1,1 4 2")
        code = dt_to_gauss(dt)
        assert len(code.components) == 2
        assert serialize_gauss(code) == "O1,U2;O2,U1"
        assert serialize_dt(gauss_to_dt(code)) == "lengths:1,1 4 2"

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("3 4", "even numbers"),
            ("4 6", "even numbers"),
            ("", "empty DT"),
            ("4 x", "bad DT label"),
            ("lengths:2 4 6 2", "sum to 2"),
            ("lengths:0,3 4 6 2", "must be positive"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(CodecError, match=fragment):
            parse_dt(text)

    def test_equal_parity_has_no_dt_form(self):
        with pytest.raises(CodecError, match="no DT form"):
            gauss_to_dt(parse_gauss("O1,O2,U1,U2"))


class TestCanonicalDt:
    def test_rotation_invariance(self):
        code = dt_to_gauss(parse_dt("4 6 2"))
        for steps in range(1, 6):
            rotated = rotate_component(code, 0, steps)
            assert dt_equivalent(gauss_to_dt(rotated), parse_dt("4 6 2"))

    def test_canonical_is_idempotent(self):
        dt = parse_dt("8 10 12 14 2 4 6")
        assert canonical_dt(canonical_dt(dt)) == canonical_dt(dt)

    def test_distinct_codes_stay_distinct(self):
        assert not dt_equivalent(parse_dt("4 6 2"), parse_dt("4 6 8 2"))


def test_bundled_dt_rows_roundtrip(bundled_entries):
    rows = [e for e in bundled_entries if e.fmt == "dt"]
    assert rows, "bundled table should carry DT rows"
    for entry in rows:
        dt = parse_dt(entry.code)
        again = gauss_to_dt(dt_to_gauss(dt))
        assert dt_equivalent(dt, again), entry.name
