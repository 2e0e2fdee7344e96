import random

import pytest

from diffspec.errors import GuardExceededError
from diffspec.gf2m import (
    GF2m,
    find_factor,
    is_irreducible,
    mu_order,
    poly_str,
    smallest_irreducible,
)


@pytest.fixture(scope="module")
def f16():
    return GF2m(4)


@pytest.fixture(scope="module")
def f256():
    return GF2m(8)


# -- construction and moduli --------------------------------------------------

def test_default_modulus_is_smallest_irreducible():
    assert GF2m(4).modulus == 0x13      # x^4 + x + 1
    assert GF2m(8).modulus == 0x11B     # x^8 + x^4 + x^3 + x + 1
    assert GF2m(12).modulus == 0x1009   # x^12 + x^3 + 1


def test_smallest_irreducible_against_sympy_oracle():
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")

    def oracle(m):
        for v in range((1 << m) | 1, 1 << (m + 1), 2):
            coeffs = [int(b) for b in bin(v)[2:]]
            if sympy.Poly(coeffs, x, domain=sympy.GF(2)).is_irreducible:
                return v

    for m in (4, 5, 8, 12):
        assert smallest_irreducible(m) == oracle(m)


def test_reducible_modulus_rejected_naming_factor():
    with pytest.raises(ValueError, match=r"x\^2 \+ x \+ 1"):
        GF2m(4, 0b10101)  # x^4 + x^2 + 1 = (x^2 + x + 1)^2


def test_modulus_degree_must_match():
    with pytest.raises(ValueError, match="degree"):
        GF2m(4, 0x11B)


def test_degree_bounds():
    with pytest.raises(ValueError):
        GF2m(3)
    with pytest.raises(GuardExceededError):
        GF2m(25)


def test_irreducibility_helpers():
    assert is_irreducible(0x13)
    assert not is_irreducible(0b10101)
    assert find_factor(0b10101) == 0b111
    assert poly_str(0x13) == "x^4 + x + 1"


def test_describe_format(f256):
    assert f256.describe() == "m=8 poly=0x11b"


# -- ring operations -----------------------------------------------------------

def test_add_examples(f16):
    assert f16.add(0b0011, 0b0101) == 0b0110
    for a in f16.elements():
        assert f16.add(a, 0) == a
        assert f16.add(a, a) == 0


def test_mul_examples(f16):
    assert f16.mul(0b0010, 0b0010) == 0b0100       # x * x = x^2
    assert f16.mul(0b1000, 0b0010) == 0b0011       # x^3 * x = x + 1
    for a in f16.elements():
        assert f16.mul(a, 1) == a


def test_ring_laws_exhaustive_m4(f16):
    els = list(f16.elements())
    for a in els:
        for b in els:
            assert f16.mul(a, b) == f16.mul(b, a)
            for c in els:
                assert f16.mul(f16.mul(a, b), c) == f16.mul(a, f16.mul(b, c))
                assert f16.mul(a, b ^ c) == f16.mul(a, b) ^ f16.mul(a, c)


@pytest.mark.parametrize("m", [8, 12, 16])
def test_ring_laws_random(m):
    fld = GF2m(m)
    rng = random.Random(m)
    for _ in range(10_000):
        a, b, c = (rng.randrange(fld.order) for _ in range(3))
        assert fld.mul(a, b) == fld.mul(b, a)
        assert fld.mul(fld.mul(a, b), c) == fld.mul(a, fld.mul(b, c))
        assert fld.mul(a, b ^ c) == fld.mul(a, b) ^ fld.mul(a, c)


def test_inverse_exhaustive_m4(f16):
    for a in range(1, f16.order):
        assert f16.mul(a, f16.inv(a)) == 1
        assert f16.pow(a, f16.order - 1) == 1
    assert f16.inv(1) == 1
    with pytest.raises(ZeroDivisionError):
        f16.inv(0)


def test_pow_conventions(f16):
    assert f16.pow(0, 0) == 1
    assert f16.pow(0, 7) == 0
    for a in range(1, 16):
        assert f16.pow(a, 13) == f16.inv(f16.mul(a, a))   # 13 = -2 mod 15
    with pytest.raises(ValueError):
        f16.pow(2, -1)


def test_element_validation(f16):
    with pytest.raises(ValueError):
        f16.mul(16, 1)
    with pytest.raises(ValueError):
        f16.add(1, -1)


# -- Frobenius and traces --------------------------------------------------------

def test_frobenius_basics(f16):
    for a in f16.elements():
        assert f16.frobenius_pow(a, 0) == a
        sq = f16.frobenius_pow(a, 3)
        assert f16.mul(sq, sq) == a                 # x^(2^m) = x
    for a in (0, 1):
        for k in range(4):
            assert f16.frobenius_pow(a, k) == a
    with pytest.raises(ValueError):
        f16.frobenius_pow(1, 4)


@pytest.mark.parametrize("m", [8, 12])
def test_frobenius_is_a_homomorphism(m):
    fld = GF2m(m)
    rng = random.Random(m + 100)
    for _ in range(2000):
        a, b = rng.randrange(fld.order), rng.randrange(fld.order)
        k = rng.randrange(m)
        assert fld.frobenius_pow(a ^ b, k) == fld.frobenius_pow(a, k) ^ fld.frobenius_pow(b, k)
        assert fld.frobenius_pow(fld.mul(a, b), k) == fld.mul(
            fld.frobenius_pow(a, k), fld.frobenius_pow(b, k)
        )


def test_abs_trace(f16, f256):
    assert f16.abs_trace(0) == 0
    assert f16.abs_trace(1) == 0                    # m even
    for fld in (f16, f256):
        assert sum(fld.abs_trace(a) for a in fld.elements()) == fld.order // 2


def test_abs_trace_linearity():
    fld = GF2m(12)
    rng = random.Random(7)
    for _ in range(2000):
        a, b = rng.randrange(fld.order), rng.randrange(fld.order)
        assert fld.abs_trace(a ^ b) == fld.abs_trace(a) ^ fld.abs_trace(b)


def test_rel_trace(f256):
    for a in f256.elements():
        assert f256.rel_trace(a, 8) == a            # trivial tower
        for k in (1, 2, 4):
            assert f256.in_subfield(f256.rel_trace(a, k), k)
    # four equal terms collapse in characteristic 2
    for a in f256.subfield_elements(2):
        assert f256.rel_trace(a, 2) == 0
    with pytest.raises(ValueError):
        f256.rel_trace(1, 3)


def test_trace_transitivity(f256):
    for a in f256.elements():
        t = f256.rel_trace(a, 2)
        assert f256.subfield_abs_trace(t, 2) == f256.abs_trace(a)


def test_subfield_abs_trace_validation(f256):
    gen = next(a for a in f256.elements() if not f256.in_subfield(a, 4))
    with pytest.raises(ValueError):
        f256.subfield_abs_trace(gen, 4)
    for a in f256.elements():
        assert f256.subfield_abs_trace(a, 8) == f256.abs_trace(a)


def test_sqrt(f16):
    assert f16.sqrt(0) == 0
    assert f16.sqrt(1) == 1
    assert f16.sqrt(0b0100) == 0b0010
    for a in f16.elements():
        assert f16.sqrt(f16.mul(a, a)) == a


# -- quadratic machinery -----------------------------------------------------

def test_artin_schreier_trivial(f16):
    assert f16.solve_artin_schreier(0) == (0, 1)


def test_artin_schreier_exhaustive(f256):
    for c in f256.elements():
        roots = f256.solve_artin_schreier(c)
        if f256.abs_trace(c) == 1:
            assert roots == ()
        else:
            assert len(roots) == 2
            assert roots[0] ^ roots[1] == 1
            for r in roots:
                assert f256.mul(r, r) ^ r == c


def test_solve_quadratic_special_cases(f16):
    for gamma in f16.elements():
        assert f16.solve_quadratic(0, gamma) == (f16.sqrt(gamma),)
    assert f16.solve_quadratic(1, 0) == (0, 1)


def test_solve_quadratic_exhaustive(f16):
    for beta in f16.elements():
        for gamma in f16.elements():
            roots = f16.solve_quadratic(beta, gamma)
            assert len(roots) in (0, 1, 2)
            if len(roots) == 1:
                assert beta == 0
            for r in roots:
                assert f16.mul(r, r) ^ f16.mul(beta, r) ^ gamma == 0


# -- subgroups and subfields ---------------------------------------------------

def test_in_mu(f256):
    assert f256.in_mu(1, 7)
    assert not f256.in_mu(0, 7)
    assert sum(f256.in_mu(a, 5) for a in f256.elements()) == 5   # q+1 with q=4
    assert mu_order(5, 8) == 5


def test_in_subfield(f256):
    for k in (1, 2, 4, 8):
        assert f256.in_subfield(0, k)
        assert f256.in_subfield(1, k)
    assert sum(f256.in_subfield(a, 4) for a in f256.elements()) == 16
    # mu_(q-1) sits inside GF(q): x^(q-1) = 1 forces x^q = x
    for a in f256.elements():
        if f256.in_mu(a, 3):
            assert f256.in_subfield(a, 2)
    with pytest.raises(ValueError):
        f256.in_subfield(1, 5)


def test_subfield_elements_matches_predicate(f256):
    for k in (1, 2, 4):
        listed = f256.subfield_elements(k)
        assert listed == [a for a in f256.elements() if f256.in_subfield(a, k)]
        assert len(listed) == 1 << k
        for a in listed[:8]:
            for b in listed[:8]:
                assert f256.mul(a, b) in listed


@pytest.mark.parametrize("m,n", [(8, 2), (12, 3)])
def test_unit_circles_intersect_trivially(m, n):
    fld = GF2m(m)
    q = 1 << n
    both = [
        a for a in fld.elements()
        if a and fld.pow(a, q + 1) == 1 and fld.pow(a, q - 1) == 1
    ]
    assert both == [1]


# -- log/antilog tables ---------------------------------------------------------

def test_tables_agree_with_schoolbook_exhaustive(f16):
    exp, log = f16.log_tables()
    size = f16.order - 1
    assert sorted(int(v) for v in exp) == list(range(1, f16.order))
    for a in range(1, f16.order):
        for b in range(1, f16.order):
            assert f16.mul(a, b) == int(exp[(int(log[a]) + int(log[b])) % size])


def test_tables_agree_with_schoolbook_random():
    fld = GF2m(12)
    exp, log = fld.log_tables()
    size = fld.order - 1
    rng = random.Random(12)
    for _ in range(2000):
        a, b = rng.randrange(1, fld.order), rng.randrange(1, fld.order)
        assert fld.mul(a, b) == int(exp[(int(log[a]) + int(log[b])) % size])


def test_primitive_element_generates(f16):
    g = f16.primitive_element()
    seen = set()
    x = 1
    for _ in range(f16.order - 1):
        seen.add(x)
        x = f16.mul(x, g)
    assert len(seen) == f16.order - 1
