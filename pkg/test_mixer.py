"""Tests for mixes, comixes and chirality groups."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from catalog import s6_polytope_3443, simplex, toroid44, universal  # noqa: E402
from criteria import criterion_coprime  # noqa: E402
from mixer import (  # noqa: E402
    chirality_group,
    comix,
    maximal_regular_quotient,
    minimal_regular_cover,
    mix,
    verify_product_formula,
)
from permcore import order  # noqa: E402
from rotgroup import (  # noqa: E402
    Status,
    enantiomorph,
    face_data,
    from_realization,
    is_directly_regular,
)


@pytest.fixture(scope="session")
def toroids():
    return {
        "t12": toroid44(1, 2),
        "t21": toroid44(2, 1),
        "t23": toroid44(2, 3),
        "t14": toroid44(1, 4),
        "t10": toroid44(1, 0),
    }


@pytest.fixture(scope="session")
def s6_polytope():
    return s6_polytope_3443()


def test_mix_of_enantiomorphic_toroids(toroids):
    """{4,4}_(1,2) mixed with {4,4}_(2,1) has order 100 and is directly regular."""
    result = mix(toroids["t12"], toroids["t21"])
    mixed = result.system
    assert mixed.order == 100
    assert mixed.schlafli_type == (4, 4)
    assert not mixed.presentation_complete
    assert result.blocks == ((0, 20), (20, 40))
    assert is_directly_regular(mixed)
    assert order(result.projection_kernel(1)) == 5


def test_mix_order_is_symmetric(toroids):
    """Swapping the factors does not change the mix order."""
    forward = mix(toroids["t12"], toroids["t10"]).system.order
    backward = mix(toroids["t10"], toroids["t12"]).system.order
    assert forward == backward


def test_mix_rejects_rank_mismatch(toroids):
    """Only systems of equal rank can be mixed."""
    with pytest.raises(ValueError):
        mix(toroids["t12"], simplex(4))
    with pytest.raises(ValueError):
        comix(toroids["t12"], simplex(4))


def test_mix_with_unknown_factor_stays_symbolic(toroids):
    """A factor of unknown status gives a mix of unknown status."""
    infinite = universal(4, 4, budget=1000)
    result = mix(toroids["t12"], infinite)
    assert result.system.status is Status.UNKNOWN
    assert not result.system.presentation_complete


def test_comix_routes_agree(toroids):
    """Presentation and kernel routes give the same comix order."""
    t12 = toroids["t12"]
    by_presentation = comix(t12, enantiomorph(t12))
    realized = from_realization(3, t12.images, (), complete=False, name="realized")
    by_kernel = comix(realized, toroids["t21"])
    assert by_presentation.order == 4
    assert by_kernel.order == 4


def test_product_formula(toroids):
    """|mix| * |comix| equals the product of the factor orders."""
    check = verify_product_formula(toroids["t12"], toroids["t21"])
    assert (check.mix_order, check.comix_order) == (100, 4)
    assert check.holds
    other = verify_product_formula(toroids["t12"], universal(3, 4))
    assert other.mix_order * other.comix_order == 20 * 24


@pytest.mark.parametrize("key, size", [("t12", 5), ("t23", 13), ("t14", 17)])
def test_toroid_chirality_groups(toroids, key, size):
    """Chiral {4,4} toroids have cyclic chirality groups of prime order."""
    report = chirality_group(toroids[key])
    assert report.order == size
    assert report.abelian_invariants == [size]
    assert report.simple
    assert report.label == f"C{size}"
    assert report.route == "presentation"
    assert not report.totally_chiral


def test_chirality_group_of_regular_system():
    """Directly regular systems have a trivial chirality group."""
    report = chirality_group(universal(3, 3))
    assert report.order == 1
    assert report.directly_regular
    assert report.label == "1"
    assert report.to_dict()["comix_with_mirror_order"] == 12


def test_chirality_group_by_realization(toroids):
    """Without a complete presentation the realization route gives the same group."""
    t12 = toroids["t12"]
    realized = from_realization(3, t12.images, (), complete=False, name="realized")
    report = chirality_group(realized)
    assert report.route == "realization"
    assert report.order == 5
    assert report.comix_order == 4


def test_chirality_group_of_unknown_system():
    """An unknown system reports an unknown chirality group."""
    report = chirality_group(universal(4, 4, budget=1000), budget=1000)
    assert report.order is None
    assert report.to_dict()["order"] == "unknown"
    assert report.route == "unknown"


def test_regular_cover_and_quotient(toroids):
    """The minimal regular cover has order 100 and the maximal regular quotient 4."""
    cover = minimal_regular_cover(toroids["t12"])
    assert cover.order == 100
    assert cover.name == "cover(toroid44(1,2))"
    assert is_directly_regular(cover)
    quotient = maximal_regular_quotient(toroids["t12"])
    assert quotient.order == 4
    assert quotient.name == "quotient(toroid44(1,2))"
    assert is_directly_regular(quotient)


def test_s6_polytope_mixed_with_prism(s6_polytope):
    """Against {2,3,3,2} the mix is a {6,12,12,6} polytope keeping X = A6."""
    mixed = mix(s6_polytope, universal(2, 3, 3, 2)).system
    assert mixed.order == 720 * 48
    certificate = criterion_coprime(s6_polytope, universal(2, 3, 3, 2))
    assert certificate.theorem_tag == "coprime-type"
    faces = face_data(mixed, assume_polytopal=certificate.conclusive)
    assert faces.schlafli_type == (6, 12, 12, 6)
    assert faces.face_vector == (12, 120, 480, 120, 12)
    assert faces.flags == 69120
    report = chirality_group(mixed)
    assert report.order == 360
    assert report.simple


def test_s6_polytope_mixed_with_simplex_prism(s6_polytope):
    """Against {2,3,3,3} the comix is trivial and the flags are twice the order."""
    partner = universal(2, 3, 3, 3)
    mixed = mix(s6_polytope, partner).system
    assert mixed.order == 86400
    formula = verify_product_formula(s6_polytope, partner)
    assert formula.holds
    assert formula.comix_order == 1
    certificate = criterion_coprime(s6_polytope, partner)
    assert certificate.theorem_tag == "coprime-middle-type"
    faces = face_data(mixed, assume_polytopal=certificate.conclusive)
    assert faces.schlafli_type == (6, 12, 12, 3)
    assert faces.face_vector == (12, 150, 2400, 300, 30)
    assert faces.flags == 172800
