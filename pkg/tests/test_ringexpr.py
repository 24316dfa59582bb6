import pytest

from spinaction.errors import GroupMismatch, ParseError
from spinaction.repring import GroupSpec, RepElement
from spinaction.ringexpr import parse_ring

G4 = GroupSpec.even(4)


@pytest.mark.parametrize(
    "text,want",
    [
        ("h1*h1", "h2 + 1 + t1"),
        ("(1 - t1)^2", "2 - 2*t1"),
        ("h1*h2", "h3 + h1"),
        ("h0*h1", "2*h1"),
        ("1 + 2*3", "7"),
        ("-t1 + 1", "1 - t1"),
        ("2*(h1 - h1)", "0"),
        ("  h1 *  h1  ", "h2 + 1 + t1"),
    ],
)
def test_normal_forms(text, want):
    assert str(parse_ring(text)) == want


def test_characters_and_negative_exponent():
    z = RepElement.char(G4, (1,))
    assert parse_ring("z1^-1", G4) == RepElement.char(G4, (3,))
    assert parse_ring("z1^4", G4) == RepElement.one(G4)
    assert parse_ring("z1*h1", G4) == z * RepElement.h(G4, 1)


@pytest.mark.parametrize("text", ["", "h1 +", "(h1", "h1)", "x", "h1^-2", "2^"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_ring(text)


def test_missing_factor():
    with pytest.raises(GroupMismatch):
        parse_ring("z2", G4)
