from fractions import Fraction

import pytest

from topzeta.newton import (DegenerateCurveError, ParseError, newton_faces,
                            nondegeneracy_check, parse_poly, poly_to_str,
                            to_face_specs)
from topzeta.resolution import build_graph_nondegenerate, definitional_zeta
from topzeta.zeta import poles, rf, zeta_nondegenerate


# --- face oracle: normals by exhaustive minimization -------------------------

def face_oracle(p):
    """Compact faces found by scanning all primitive normals directly."""
    from math import gcd
    support = list(p)
    bound = max(max(a, b) for a, b in support) + 1
    found = {}
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            if gcd(a, b) != 1:
                continue
            vals = [a * x + b * y for x, y in support]
            m = min(vals)
            pts = sorted(pt for pt, v in zip(support, vals) if v == m)
            if len(pts) >= 2:
                found[(a, b)] = (pts[0], pts[-1])
    return found


# --- parser ------------------------------------------------------------------

def test_parse_basic():
    assert parse_poly("y^2 - x^3") == {(0, 2): 1, (3, 0): -1}


def test_parse_combines_like_terms():
    with pytest.raises(ValueError, match="zero polynomial"):
        parse_poly("x*y + 2x*y - 3*x*y")


def test_parse_rejects_parentheses():
    with pytest.raises(ParseError):
        parse_poly("(x + y)^2")


def test_parse_rational_coefficients():
    assert parse_poly("1/2*x^2*y - 3y") == {(2, 1): Fraction(1, 2), (0, 1): -3}
    with pytest.raises(ParseError, match="zero denominator"):
        parse_poly("1/0*x")


def test_parse_implicit_products():
    assert parse_poly("2x^2y^3") == {(2, 3): 2}
    assert parse_poly("xy") == {(1, 1): 1}


def test_parse_error_positions():
    with pytest.raises(ParseError) as err:
        parse_poly("x^2 + z")
    assert err.value.position == 6
    with pytest.raises(ParseError):
        parse_poly("")
    with pytest.raises(ParseError):
        parse_poly("x ++ y")


def test_parse_constant_term_rejected():
    with pytest.raises(ValueError, match="constant term"):
        parse_poly("1 + x")
    # a cancelling constant is fine
    assert parse_poly("1 + x - 1") == {(1, 0): 1}


def test_printer_roundtrip():
    for text in ("y^2 - x^3", "x^2 - 2*x*y + y^2", "1/2*x^5 + x^2*y^2 + 3/4*y^3"):
        p = parse_poly(text)
        printed = poly_to_str(p)
        assert parse_poly(printed) == p
        assert poly_to_str(parse_poly(printed)) == printed


# --- Newton polygon ----------------------------------------------------------

def test_faces_cusp():
    (face,) = newton_faces(parse_poly("y^2-x^3"))
    assert (face.normal.a, face.normal.b) == (2, 3)
    assert face.lattice_points == ((0, 2), (3, 0))
    assert face.face_poly == (1, -1)


def test_faces_node():
    (face,) = newton_faces(parse_poly("x^2-y^2"))
    assert (face.normal.a, face.normal.b) == (1, 1)
    assert face.lattice_points == ((0, 2), (1, 1), (2, 0))
    assert face.face_poly == (-1, 0, 1)


def test_faces_single_when_middle_point_is_interior():
    # (2,2) lies above the segment from (0,3) to (5,0): one face only
    faces = newton_faces(parse_poly("x^5+x^2*y^2+y^3"))
    assert [(f.normal.a, f.normal.b) for f in faces] == [(3, 5)]
    assert faces[0].lattice_points == ((0, 3), (5, 0))


def test_faces_two_face_polygon():
    faces = newton_faces(parse_poly("y^5+x^2*y^2+x^5"))
    assert [(f.normal.a, f.normal.b) for f in faces] == [(3, 2), (2, 3)]


def test_faces_match_exhaustive_normal_scan():
    for text in ("y^2-x^3", "x^2-y^2", "x^5+x^2*y^2+y^3", "y^5+x^2*y^2+x^5",
                 "y^3+x^2*y+x^5", "y^4+x*y^2+x^3", "x^7+x^4*y+x*y^3+y^6"):
        p = parse_poly(text)
        faces = newton_faces(p)
        oracle = face_oracle(p)
        got = {(f.normal.a, f.normal.b):
               (f.lattice_points[0], f.lattice_points[-1]) for f in faces}
        assert got == oracle, text


def test_faces_require_both_axes():
    with pytest.raises(ValueError, match="divisible by x or y"):
        newton_faces(parse_poly("x^2*y + x*y^2"))
    with pytest.raises(ValueError, match="divisible by x or y"):
        newton_faces(parse_poly("x^2 + x*y"))


def test_faces_ignore_terms_above_polygon():
    same = ["y^2-x^3", "y^2-x^3+x^100", "y^2-x^3+x^5*y^5"]
    reference = newton_faces(parse_poly(same[0]))
    for text in same[1:]:
        assert newton_faces(parse_poly(text)) == reference


def test_faces_invariant_under_scaling():
    p = parse_poly("y^5+x^2*y^2+x^5")
    scaled = {k: Fraction(-7, 3) * v for k, v in p.items()}
    assert [f.normal for f in newton_faces(scaled)] == \
        [f.normal for f in newton_faces(p)]
    assert [(f.normal, f.lattice_points) for f in newton_faces(scaled)] == \
        [(f.normal, f.lattice_points) for f in newton_faces(p)]


def test_face_poly_endpoints_nonzero():
    for text in ("y^2-x^3", "x^2-y^2", "y^5+x^2*y^2+x^5"):
        for f in newton_faces(parse_poly(text)):
            assert f.face_poly[0] != 0 and f.face_poly[-1] != 0


# --- nondegeneracy and specs ---------------------------------------------------

def test_nondegeneracy_examples():
    assert nondegeneracy_check(newton_faces(parse_poly("y^2-x^3"))) is None
    assert nondegeneracy_check(newton_faces(parse_poly("x^2-y^2"))) is None
    witness = nondegeneracy_check(newton_faces(parse_poly("x^2-2*x*y+y^2")))
    assert witness is not None and witness.gcd_degree == 1


def test_to_face_specs():
    assert to_face_specs(newton_faces(parse_poly("y^2-x^3"))) == [(2, 3, 1)]
    assert to_face_specs(newton_faces(parse_poly("x^2-y^2"))) == [(1, 1, 2)]
    assert to_face_specs(newton_faces(parse_poly("y^5+x^2*y^2+x^5"))) == \
        [(3, 2, 1), (2, 3, 1)]
    with pytest.raises(DegenerateCurveError):
        to_face_specs(newton_faces(parse_poly("x^2-2*x*y+y^2")))


def test_pipeline_closed_form_equals_oracle():
    for text in ("y^2-x^3", "x^2-y^2", "y^5+x^2*y^2+x^5", "y^3+x^2*y+x^5"):
        specs = to_face_specs(newton_faces(parse_poly(text)))
        z = zeta_nondegenerate(specs)
        assert definitional_zeta(build_graph_nondegenerate(specs)) == z


def test_order_two_pole_through_polynomial_pipeline():
    specs = to_face_specs(newton_faces(parse_poly("y^5+x^2*y^2+x^5")))
    z = zeta_nondegenerate(specs)
    assert (Fraction(-1, 2), 2) in poles(z)


def test_node_pipeline_golden():
    specs = to_face_specs(newton_faces(parse_poly("x^2-y^2")))
    assert zeta_nondegenerate(specs) == rf(1, (1,), [((1, 1), 2)])
