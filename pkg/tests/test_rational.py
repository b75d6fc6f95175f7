import random

import pytest

from tdr.errors import ParseError
from tdr.rational import Q, format_rational, parse_rational


def test_parse_fraction_strings():
    assert parse_rational("3/4") == Q(3, 4)
    assert parse_rational("-3/4") == Q(-3, 4)
    assert parse_rational("7") == Q(7)
    assert parse_rational("-7") == Q(-7)
    assert parse_rational(5) == Q(5)
    assert parse_rational("6/4") == Q(3, 2)


def test_parse_rejects_bad_values():
    for bad in ("1/0", "0/0", "x", "1.5", "1/2/3", "", 1.5, True, None, [1]):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_format_integers_have_no_slash():
    assert format_rational(Q(6, 3)) == "2"
    assert format_rational(Q(-6, 4)) == "-3/2"
    assert format_rational(Q(0)) == "0"


def test_format_parse_round_trip():
    rng = random.Random(0)
    for _ in range(300):
        q = Q(rng.randint(-99, 99), rng.randint(1, 40))
        assert parse_rational(format_rational(q)) == q


def test_exact_arithmetic():
    assert Q(1, 3) + Q(1, 6) == Q(1, 2)
    assert Q(2, 3) * Q(3, 2) == 1
    assert Q(1, 10) + Q(2, 10) == Q(3, 10)
