"""
Galois Matrix - GL2(F_p) machinery for the symplectic criteria

Explicit quaternion (H8) and dicyclic (Dic12) subgroups, brute-force
normalizers and centralizers, determinant square-class patterns, the
symplectic type of an isomorphism matrix, the multiplicative (KO) criterion,
isogeny signs and the Tate-curve module map diag(n, 1).
"""

import enum
import logging
import typing as tp
from dataclasses import dataclass, replace

import numpy as np
from sympy import isprime, mod_inverse

from .errors import BruteForceBoundExceeded, NoSolution, PDividesValuation, PreconditionFailed
from .exact_arith import legendre
from .settings import GfeSettings, get_settings

logger = logging.getLogger(__name__)


class SymplecticType(enum.Enum):
    SYMPLECTIC = "Symplectic"
    ANTI_SYMPLECTIC = "AntiSymplectic"
    BOTH = "Both"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class MatGL2:
    """2x2 matrix ((a, b), (c, d)) over F_p with nonzero determinant."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, int(getattr(self, name)) % self.p)
        if self.det == 0:
            raise ValueError(f"singular matrix {self.rows} over F_{self.p}")

    @classmethod
    def of(cls, rows: tp.Sequence[tp.Sequence[int]], p: int) -> "MatGL2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, p)

    @classmethod
    def identity(cls, p: int) -> "MatGL2":
        return cls(1, 0, 0, 1, p)

    @classmethod
    def scalar(cls, k: int, p: int) -> "MatGL2":
        return cls(k, 0, 0, k, p)

    @property
    def rows(self) -> tp.Tuple[tp.Tuple[int, int], tp.Tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    @property
    def code(self) -> int:
        p = self.p
        return ((self.a * p + self.b) * p + self.c) * p + self.d

    def __mul__(self, other: "MatGL2") -> "MatGL2":
        return MatGL2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.p,
        )

    def inverse(self) -> "MatGL2":
        k = mod_inverse(self.det, self.p)
        return MatGL2(self.d * k, -self.b * k, -self.c * k, self.a * k, self.p)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def order(self) -> int:
        identity = MatGL2.identity(self.p)
        power, n = self, 1
        while power != identity:
            power = power * self
            n += 1
        return n

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.p}"


@dataclass(frozen=True)
class SubgroupGL2:
    p: int
    elements: tp.Tuple[MatGL2, ...]
    iso_tag: str
    generators: tp.Tuple[MatGL2, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def order_census(self) -> tp.Dict[int, int]:
        """element order -> number of elements of that order"""
        census: tp.Dict[int, int] = {}
        for g in self.elements:
            k = g.order()
            census[k] = census.get(k, 0) + 1
        return dict(sorted(census.items()))

    def is_abelian(self) -> bool:
        return all(g * h == h * g for g in self.generators for h in self.generators)


def generate_subgroup(generators: tp.Sequence[MatGL2], iso_tag: str = "Other") -> SubgroupGL2:
    """Closure of a set of generators under multiplication."""
    p = generators[0].p
    identity = MatGL2.identity(p)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                gh = g * h
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    elements = tuple(sorted(seen, key=lambda m: m.code))
    return SubgroupGL2(p=p, elements=elements, iso_tag=iso_tag, generators=tuple(generators))


def _require_prime(p: int, minimum: int) -> None:
    if not isprime(p) or p < minimum:
        raise PreconditionFailed(f"need a prime p >= {minimum}, got {p}")


def embed_H8(p: int) -> SubgroupGL2:
    """
    Quaternion group <[[0,-1],[1,0]], [[alpha,beta],[beta,-alpha]]> in SL2(F_p).

    (alpha, beta) is the lexicographically least solution of
    alpha^2 + beta^2 = -1 mod p.
    """
    _require_prime(p, 3)
    alpha, beta = next(
        (x, y) for x in range(p) for y in range(p) if (x * x + y * y + 1) % p == 0
    )
    g1 = MatGL2(0, -1, 1, 0, p)
    g2 = MatGL2(alpha, beta, beta, -alpha, p)
    H = generate_subgroup([g1, g2], "H8")
    if H.order != 8:
        raise NoSolution(f"H8 construction produced a group of order {H.order} at p = {p}")
    return H


def embed_Dic12(p: int) -> SubgroupGL2:
    """
    Dicyclic group <[[alpha,beta],[beta,1-alpha]], [[0,-1],[1,0]]> in SL2(F_p)
    with beta != 0 and beta^2 = -alpha^2 + alpha - 1.
    """
    _require_prime(p, 5)
    solution = next(
        ((x, y) for x in range(p) for y in range(1, p) if (y * y + x * x - x + 1) % p == 0),
        None,
    )
    if solution is None:
        raise NoSolution(f"no (alpha, beta) with beta != 0 at p = {p}")
    alpha, beta = solution
    g1 = MatGL2(alpha, beta, beta, 1 - alpha, p)
    g2 = MatGL2(0, -1, 1, 0, p)
    H = generate_subgroup([g1, g2], "Dic12")
    if H.order != 12:
        raise NoSolution(f"Dic12 construction produced a group of order {H.order} at p = {p}")
    return H


def _gl2_arrays(p: int) -> np.ndarray:
    """All of GL2(F_p) as a (4, n) int64 array of (a, b, c, d)."""
    grid = np.indices((p, p, p, p), dtype=np.int64).reshape(4, -1)
    a, b, c, d = grid
    mask = (a * d - b * c) % p != 0
    return grid[:, mask]


def _codes(entries: np.ndarray, p: int) -> np.ndarray:
    a, b, c, d = entries
    return ((a * p + b) * p + c) * p + d


def _from_arrays(entries: np.ndarray, p: int) -> tp.List[MatGL2]:
    return [MatGL2(int(a), int(b), int(c), int(d), p) for a, b, c, d in entries.T]


@dataclass(frozen=True)
class NormalizerData:
    normalizer: tp.Tuple[MatGL2, ...]
    centralizer: tp.Tuple[MatGL2, ...]

    @property
    def quotient_order(self) -> int:
        """|N| / |C(G)| with C(G) the scalar matrices."""
        p = self.normalizer[0].p
        return len(self.normalizer) // (p - 1)


def normalizer_and_centralizer(
    H: SubgroupGL2, settings: tp.Optional[GfeSettings] = None
) -> NormalizerData:
    """
    Normalizer and centralizer of H in GL2(F_p) by full enumeration.

    Raises:
        BruteForceBoundExceeded: p is above settings.brute_force_bound
    """
    settings = settings or get_settings()
    p = H.p
    if p > settings.brute_force_bound:
        raise BruteForceBoundExceeded(
            f"p = {p} exceeds the enumeration bound {settings.brute_force_bound}"
        )
    G = _gl2_arrays(p)
    a, b, c, d = G
    det = (a * d - b * c) % p
    inv_table = np.array([0] + [pow(k, -1, p) for k in range(1, p)], dtype=np.int64)
    dinv = inv_table[det]
    ia, ib, ic, id_ = (d * dinv) % p, (-b * dinv) % p, (-c * dinv) % p, (a * dinv) % p
    member_codes = np.array([h.code for h in H.elements], dtype=np.int64)
    in_normalizer = np.ones(G.shape[1], dtype=bool)
    in_centralizer = np.ones(G.shape[1], dtype=bool)
    for h in H.generators:
        # g h
        ga = (a * h.a + b * h.c) % p
        gb = (a * h.b + b * h.d) % p
        gc = (c * h.a + d * h.c) % p
        gd = (c * h.b + d * h.d) % p
        # (g h) g^-1
        ca = (ga * ia + gb * ic) % p
        cb = (ga * ib + gb * id_) % p
        cc = (gc * ia + gd * ic) % p
        cd = (gc * ib + gd * id_) % p
        conj = np.stack([ca, cb, cc, cd])
        in_normalizer &= np.isin(_codes(conj, p), member_codes)
        in_centralizer &= (ca == h.a) & (cb == h.b) & (cc == h.c) & (cd == h.d)
    N = _from_arrays(G[:, in_normalizer], p)
    C = _from_arrays(G[:, in_centralizer], p)
    logger.debug(f"{H.iso_tag} at p={p}: |N| = {len(N)}, |C| = {len(C)}")
    return NormalizerData(normalizer=tuple(N), centralizer=tuple(C))


@dataclass(frozen=True)
class DetPattern:
    """AllSquare, or IndexTwoSquare with the square-determinant subgroup."""

    kind: str
    square_elements: tp.Tuple[MatGL2, ...]
    index: int
    square_quotient_order: int


def det_pattern(H: SubgroupGL2, settings: tp.Optional[GfeSettings] = None) -> DetPattern:
    data = normalizer_and_centralizer(H, settings)
    p = H.p
    squares = tuple(g for g in data.normalizer if legendre(g.det, p) == 1)
    index = len(data.normalizer) // len(squares)
    kind = "AllSquare" if index == 1 else "IndexTwoSquare"
    return DetPattern(
        kind=kind,
        square_elements=squares,
        index=index,
        square_quotient_order=len(squares) // (p - 1),
    )


def is_subgroup(elements: tp.Sequence[MatGL2]) -> bool:
    members = set(elements)
    return all(g * h in members for g in members for h in members)


def symplectic_type_of_matrix(M: MatGL2) -> SymplecticType:
    """Symplectic iff det(M) is a square mod p."""
    if M.p == 2:
        return SymplecticType.SYMPLECTIC
    if legendre(M.det, M.p) == 1:
        return SymplecticType.SYMPLECTIC
    return SymplecticType.ANTI_SYMPLECTIC


def symplectic_type_of_isomorphisms(
    matrices: tp.Sequence[MatGL2], image: tp.Optional[SubgroupGL2] = None
) -> SymplecticType:
    """
    Symplectic type of a family of module isomorphisms.

    Mixed determinant classes are reported as Both only for an abelian image;
    otherwise the family is Undetermined.
    """
    kinds = {symplectic_type_of_matrix(M) for M in matrices}
    if len(kinds) == 1:
        return kinds.pop()
    if image is not None and image.is_abelian():
        return SymplecticType.BOTH
    return SymplecticType.UNDETERMINED


def ko_symplectic(v_disc: int, v_disc_other: int, p: int) -> SymplecticType:
    """
    Multiplicative criterion: E[p] and E'[p] at a prime of multiplicative
    reduction are symplectic iff v(Delta) * v(Delta') is a square mod p.

    Raises:
        PDividesValuation: p divides one of the valuations
    """
    if v_disc % p == 0 or v_disc_other % p == 0:
        raise PDividesValuation(f"{p} divides {v_disc} or {v_disc_other}")
    if legendre(v_disc * v_disc_other, p) == 1:
        return SymplecticType.SYMPLECTIC
    return SymplecticType.ANTI_SYMPLECTIC


def isogeny_symplectic_sign(n: int, p: int) -> SymplecticType:
    """An isogeny of degree n induces a symplectic map on E[p] iff (n/p) = 1."""
    if n % p == 0:
        raise PreconditionFailed(f"{p} divides the isogeny degree {n}")
    return SymplecticType.SYMPLECTIC if legendre(n, p) == 1 else SymplecticType.ANTI_SYMPLECTIC


def local_criterion_rule(residue_symbol: int, fine_sign: str) -> SymplecticType:
    """
    Decision rule for curves with the same inertial field of type H8 or Dic12.

    When (2/p) resp. (3/p) is 1 every isomorphism is symplectic; otherwise the
    type is inherited from the mod-3 resp. mod-5 fine sign.
    """
    if residue_symbol == 1:
        return SymplecticType.SYMPLECTIC
    if fine_sign not in ("+", "-"):
        raise ValueError(f"fine sign must be '+' or '-', got {fine_sign!r}")
    return SymplecticType.SYMPLECTIC if fine_sign == "+" else SymplecticType.ANTI_SYMPLECTIC


@dataclass(frozen=True)
class TateParams:
    """e2 = n e1 + p m with the module map diag(n, 1)."""

    ell: int
    p: int
    e1: int
    e2: int
    n: int
    m: int

    @property
    def module_map(self) -> MatGL2:
        return MatGL2(self.n, 0, 0, 1, self.p)


def tate_module_matrix(ell: int, p: int, e1: int, e2: int) -> TateParams:
    """
    Module isomorphism between the p-torsion of two Tate curves.

    Raises:
        PreconditionFailed: ell == p, ell = 1 mod p, or p | e1 e2
    """
    if ell == p or ell % p == 1 or (e1 * e2) % p == 0:
        raise PreconditionFailed(f"invalid Tate data (ell={ell}, p={p}, e1={e1}, e2={e2})")
    n = (e2 * mod_inverse(e1, p)) % p
    m = (e2 - n * e1) // p
    return TateParams(ell=ell, p=p, e1=e1, e2=e2, n=n, m=m)


def tate_equivariance_check(params: TateParams) -> bool:
    """
    Check that diag(n, 1) intertwines the two Galois actions.

    The action on the basis (zeta, gamma_i) is [[r, e_i s / e_1], [0, 1]] for
    every r in F_p^x and s in F_p.
    """
    p = params.p
    n_true = (params.e2 * mod_inverse(params.e1, p)) % p
    M = params.module_map
    for r in range(1, p):
        for s in range(p):
            A1 = MatGL2(r, s, 0, 1, p)
            A2 = MatGL2(r, n_true * s, 0, 1, p)
            if M * A1 != A2 * M:
                return False
    return True


def corrupt(params: TateParams, delta: int = 1) -> TateParams:
    """Negative control: shift n to another nonzero class mod p."""
    p = params.p
    n = (params.n + delta) % p
    if n in (0, params.n % p):
        n = (params.n + delta + 1) % p
    return replace(params, n=n)
