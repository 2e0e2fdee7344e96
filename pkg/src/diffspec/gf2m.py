"""Arithmetic for binary extension fields GF(2^m) in polynomial basis.

Field elements are plain Python ints: bit ``i`` of the int is the
coefficient of ``x^i``, so an element of GF(2^m) is a value in
``[0, 2^m)``.  Addition is XOR; multiplication is carry-less (shift and
XOR) reduced by an irreducible modulus of degree exactly ``m``.  All
operations are pure functions of their inputs.  A ``GF2m`` instance never
changes its observable state after construction; the solver and table
caches it builds on first use are derived data computed idempotently, so
instances can be shared across threads.

Beyond the ring operations the module provides the machinery needed for
solving quadratic equations in characteristic 2: Frobenius powers,
absolute and relative traces, the unique square root, and an
Artin-Schreier solver for ``z^2 + z = c`` that works for any degree
(including even degrees, where the textbook half-trace shortcut fails)
by inverting the F2-linear map ``z -> z^2 + z`` with Gaussian
elimination.

For exhaustive sweeps there is an accelerated bulk path: discrete
log/antilog tables over a primitive element, stored as numpy arrays and
built with a doubling construction so that even degree-24 tables take
seconds.  The table path must (and does; the test suite checks) agree
bit-for-bit with the schoolbook scalar path.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import GuardExceededError

MIN_DEGREE = 4
MAX_DEGREE = 24  # 2^24-entry tables are the desk-scale ceiling


# ---------------------------------------------------------------------------
# Polynomials over F2, packed into ints (bit i = coefficient of x^i)
# ---------------------------------------------------------------------------

def poly_degree(p: int) -> int:
    """Degree of a packed F2 polynomial; -1 for the zero polynomial."""
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of carry-less division of a by b (b != 0)."""
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def poly_str(p: int) -> str:
    """Human-readable form of a packed polynomial, e.g. 'x^4 + x + 1'."""
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return " + ".join(terms)


def find_factor(p: int) -> int | None:
    """Smallest nontrivial factor of p by trial division, or None.

    Tries every polynomial of degree 1..deg(p)//2 in increasing integer
    order, which is feasible for the degrees this package supports.
    """
    deg = poly_degree(p)
    if deg < 1:
        return None
    for v in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(p, v) == 0:
            return v
    return None


def is_irreducible(p: int) -> bool:
    """Irreducibility over F2 via trial division."""
    return poly_degree(p) >= 1 and find_factor(p) is None


def smallest_irreducible(degree: int) -> int:
    """Lexicographically smallest irreducible polynomial of the degree.

    Candidates are enumerated in increasing integer order; only
    polynomials with the constant coefficient set can be irreducible
    (anything else is divisible by x).
    """
    for v in range((1 << degree) | 1, 1 << (degree + 1), 2):
        if is_irreducible(v):
            return v
    raise AssertionError(f"no irreducible polynomial of degree {degree}")


def _prime_factors(v: int) -> list[int]:
    out = []
    f = 2
    while f * f <= v:
        if v % f == 0:
            out.append(f)
            while v % f == 0:
                v //= f
        f += 1
    if v > 1:
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# F2 linear algebra on bit-packed vectors
# ---------------------------------------------------------------------------

class _LinearSystem:
    """Preimage solver for an F2-linear map given by its basis images.

    ``columns[i]`` is the image of the i-th basis vector ``1 << i``.  The
    constructor row-reduces the columns while tracking which basis
    vectors were combined, after which ``solve`` finds one preimage of a
    target (or None) in O(m) word operations, and ``kernel`` spans the
    null space.
    """

    def __init__(self, columns: list[int]):
        self._pivots: dict[int, tuple[int, int]] = {}
        self.kernel: list[int] = []
        for i, col in enumerate(columns):
            v, mask = col, 1 << i
            while v:
                t = v.bit_length() - 1
                if t not in self._pivots:
                    self._pivots[t] = (v, mask)
                    break
                pv, pm = self._pivots[t]
                v ^= pv
                mask ^= pm
            else:
                self.kernel.append(mask)

    def solve(self, target: int) -> int | None:
        v, mask = target, 0
        while v:
            t = v.bit_length() - 1
            if t not in self._pivots:
                return None
            pv, pm = self._pivots[t]
            v ^= pv
            mask ^= pm
        return mask


class ArtinSchreierSolver:
    """Roots of z^2 + z = c in GF(2^m).

    The map L(z) = z^2 + z is F2-linear with kernel {0, 1}, so each
    solvable right-hand side (exactly those of absolute trace 0) has two
    roots differing by 1.  Solving is done through a precomputed reduced
    basis of L rather than a half-trace, because the fields of interest
    here have even degree.
    """

    def __init__(self, field: "GF2m"):
        self.field = field
        cols = [field.mul(e, e) ^ e for e in (1 << i for i in range(field.degree))]
        self._system = _LinearSystem(cols)

    def solve(self, c: int) -> tuple[int, ...]:
        """Both roots of z^2 + z = c, or () when the trace of c is 1."""
        c = self.field.check(c)
        z = self._system.solve(c)
        if z is None:
            return ()
        return (z, z ^ 1) if z < (z ^ 1) else (z ^ 1, z)


# ---------------------------------------------------------------------------
# The field
# ---------------------------------------------------------------------------

class GF2m:
    """GF(2^m) with a fixed irreducible modulus.

    Parameters
    ----------
    degree : int
        Extension degree m, between 4 and 24.
    modulus : int, optional
        Packed irreducible polynomial of degree exactly m with the
        constant coefficient set.  When omitted, the lexicographically
        smallest irreducible polynomial of the degree is computed, which
        keeps construction deterministic without shipping tables.
    """

    def __init__(self, degree: int, modulus: int | None = None):
        if not isinstance(degree, int) or degree < MIN_DEGREE:
            raise ValueError(f"degree must be an integer >= {MIN_DEGREE}, got {degree!r}")
        if degree > MAX_DEGREE:
            raise GuardExceededError(
                f"degree {degree} exceeds the m <= {MAX_DEGREE} sweep guard"
            )
        if modulus is None:
            modulus = smallest_irreducible(degree)
        else:
            if poly_degree(modulus) != degree:
                raise ValueError(
                    f"modulus 0x{modulus:x} has degree {poly_degree(modulus)}, expected {degree}"
                )
            if not modulus & 1:
                raise ValueError(f"modulus 0x{modulus:x} is reducible: factor x")
            factor = find_factor(modulus)
            if factor is not None:
                raise ValueError(
                    f"modulus 0x{modulus:x} is reducible: factor {poly_str(factor)} (0x{factor:x})"
                )
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree          # number of field elements
        self._as_solver: ArtinSchreierSolver | None = None
        self._tables: tuple[np.ndarray, np.ndarray] | None = None
        self._subfields: dict[int, list[int]] = {}

    def __repr__(self):
        return f"GF2m(degree={self.degree}, modulus=0x{self.modulus:x})"

    def describe(self) -> str:
        """Field description in the `m=<int> poly=0x<hex>` text format."""
        return f"m={self.degree} poly=0x{self.modulus:x}"

    def check(self, a: int) -> int:
        """Validate that a is an element of this field (an int below 2^m)."""
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.order:
            raise ValueError(f"{a!r} is not an element of GF(2^{self.degree})")
        return int(a)

    def elements(self) -> range:
        return range(self.order)

    # -- ring operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        """Coefficient-wise sum mod 2 (XOR); also subtraction."""
        return self.check(a) ^ self.check(b)

    def mul(self, a: int, b: int) -> int:
        """Carry-less product reduced by the modulus, one shift at a time."""
        a = self.check(a)
        b = self.check(b)
        mod = self.modulus
        top = self.order
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return r

    def pow(self, a: int, e: int) -> int:
        """a^e by square-and-multiply; pow(0, 0) = 1 by convention.

        The exponent may be arbitrarily large: for nonzero bases it is
        reduced mod 2^m - 1 (the multiplicative group order) first.
        """
        a = self.check(a)
        if e < 0:
            raise ValueError("negative exponent; use inv() and a positive exponent")
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.order - 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        """Multiplicative inverse a^(2^m - 2); zero has none."""
        self.check(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF(2^{self.degree})")
        return self.pow(a, self.order - 2)

    # -- Frobenius, traces, square roots ------------------------------------

    def frobenius_pow(self, a: int, k: int) -> int:
        """a^(2^k) via k repeated squarings; requires 0 <= k < m."""
        a = self.check(a)
        if not 0 <= k < self.degree:
            raise ValueError(f"Frobenius power {k} out of range [0, {self.degree})")
        for _ in range(k):
            a = self.mul(a, a)
        return a

    def abs_trace(self, a: int) -> int:
        """Absolute trace to F2: sum of a^(2^i) for i < m, returned as 0/1."""
        a = self.check(a)
        t = a
        cur = a
        for _ in range(self.degree - 1):
            cur = self.mul(cur, cur)
            t ^= cur
        assert t <= 1
        return t

    def rel_trace(self, a: int, sub_degree: int) -> int:
        """Relative trace into the degree-`sub_degree` subfield.

        Computes the sum of a^(2^(i*sub_degree)) over the m/sub_degree
        cosets; the result always lands in the subfield.
        """
        self._check_sub_degree(sub_degree)
        t = self.check(a)
        for i in range(1, self.degree // sub_degree):
            t ^= self.frobenius_pow(a, i * sub_degree)
        assert self.in_subfield(t, sub_degree)
        return t

    def subfield_abs_trace(self, a: int, sub_degree: int) -> int:
        """Absolute trace of the degree-`sub_degree` subfield, for members.

        For a in GF(2^sub_degree) this is the sum of a^(2^i), i <
        sub_degree, a value in {0, 1}.  Needed because the big field's
        absolute trace of a subfield element of even index is identically
        zero and carries no information.
        """
        self._check_sub_degree(sub_degree)
        if not self.in_subfield(a, sub_degree):
            raise ValueError(f"0x{a:x} is not in the degree-{sub_degree} subfield")
        t = a
        cur = a
        for _ in range(sub_degree - 1):
            cur = self.mul(cur, cur)
            t ^= cur
        assert t <= 1
        return t

    def sqrt(self, a: int) -> int:
        """The unique square root (squaring is a bijection), a^(2^(m-1))."""
        return self.frobenius_pow(a, self.degree - 1)

    # -- quadratic equations -------------------------------------------------

    def artin_schreier_solver(self) -> ArtinSchreierSolver:
        if self._as_solver is None:
            self._as_solver = ArtinSchreierSolver(self)
        return self._as_solver

    def solve_artin_schreier(self, c: int) -> tuple[int, ...]:
        """Roots of z^2 + z = c: two roots differing by 1, or none."""
        return self.artin_schreier_solver().solve(c)

    def solve_quadratic(self, beta: int, gamma: int) -> tuple[int, ...]:
        """All field roots of x^2 + beta*x + gamma = 0.

        For beta = 0 the equation is a pure square with the single root
        sqrt(gamma); otherwise the substitution x = beta*z reduces it to
        z^2 + z = gamma / beta^2 and the Artin-Schreier solver applies.
        """
        self.check(beta)
        self.check(gamma)
        if beta == 0:
            return (self.sqrt(gamma),)
        ib = self.inv(beta)
        c = self.mul(gamma, self.mul(ib, ib))
        roots = tuple(self.mul(beta, z) for z in self.solve_artin_schreier(c))
        return tuple(sorted(roots))

    # -- multiplicative subgroups and subfields ------------------------------

    def in_mu(self, a: int, s: int) -> bool:
        """Membership in mu_s = {x : x^s = 1}, the order-dividing-s subgroup."""
        self.check(a)
        if s < 1:
            raise ValueError(f"subgroup exponent must be positive, got {s}")
        return a != 0 and self.pow(a, s) == 1

    def in_subfield(self, a: int, sub_degree: int) -> bool:
        """True when a lies in GF(2^sub_degree), i.e. a^(2^sub_degree) = a."""
        self._check_sub_degree(sub_degree)
        self.check(a)
        if sub_degree == self.degree:
            return True
        return self.frobenius_pow(a, sub_degree) == a

    def subfield_elements(self, sub_degree: int) -> list[int]:
        """All 2^sub_degree elements of the degree-`sub_degree` subfield.

        Computed as the kernel of the linear map x -> x^(2^sub_degree) + x
        rather than by scanning the whole field.
        """
        self._check_sub_degree(sub_degree)
        if sub_degree not in self._subfields:
            if sub_degree == self.degree:
                span = list(self.elements())
            else:
                cols = [
                    self.frobenius_pow(1 << i, sub_degree) ^ (1 << i)
                    for i in range(self.degree)
                ]
                span = [0]
                for vec in _LinearSystem(cols).kernel:
                    span += [s ^ vec for s in span]
            self._subfields[sub_degree] = sorted(span)
        return self._subfields[sub_degree]

    def _check_sub_degree(self, sub_degree: int):
        if sub_degree < 1 or self.degree % sub_degree != 0:
            raise ValueError(
                f"{sub_degree} does not divide the field degree {self.degree}"
            )

    # -- bulk tables for exhaustive sweeps ------------------------------------

    def primitive_element(self) -> int:
        """Smallest generator of the multiplicative group."""
        size = self.order - 1
        factors = _prime_factors(size)
        for g in range(2, self.order):
            if all(self.pow(g, size // p) != 1 for p in factors):
                return g
        raise AssertionError("no primitive element found (broken arithmetic)")

    def log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Discrete antilog/log tables (exp, log) over a primitive element.

        ``exp[k] = g^k`` for k in [0, 2^m - 1) and ``log[exp[k]] = k``;
        ``log[0]`` is meaningless and callers must special-case zero.
        Built lazily with a doubling construction: once g^0..g^(f-1) are
        known, the next f entries are the known block scaled by g^f,
        which vectorizes into O(m) numpy passes per doubling.
        """
        if self._tables is None:
            size = self.order - 1
            g = self.primitive_element()
            exp = np.empty(size, dtype=np.uint32)
            exp[0] = 1
            filled = 1
            while filled < size:
                step = min(filled, size - filled)
                scalar = self.pow(g, filled)
                exp[filled:filled + step] = self._scale_block(scalar, exp[:step])
                filled += step
            log = np.zeros(self.order, dtype=np.uint32)
            log[exp] = np.arange(size, dtype=np.uint32)
            self._tables = (exp, log)
        return self._tables

    def _scale_block(self, scalar: int, block: np.ndarray) -> np.ndarray:
        """Multiply every element of `block` by `scalar`, vectorized."""
        acc = np.zeros(len(block), dtype=np.uint64)
        v = block.astype(np.uint64)
        shift = 0
        while scalar:
            if scalar & 1:
                acc ^= v << shift
            scalar >>= 1
            shift += 1
        m = self.degree
        for t in range(2 * m - 2, m - 1, -1):
            mask = (acc >> t) & 1
            acc ^= mask * (self.modulus << (t - m))
        return acc.astype(np.uint32)


def mu_order(s: int, m: int) -> int:
    """Size of mu_s inside GF(2^m)^*: gcd(s, 2^m - 1)."""
    return math.gcd(s, (1 << m) - 1)
