"""Solvers for structured matrix polynomial equations.

An equation is a polynomial with square matrix coefficients plus an
orientation saying on which side of the coefficients the unknown matrices
sit.  Solving goes through the scalar spectrum: roots of the determinant
polynomial supply candidate eigenvalues, null vectors of P evaluated there
supply shared-eigenvector candidates, and stacking n of them into an
invertible transform reconstructs unknowns of the form X_s = T F_s T^{-1}.

The univariate path enumerates eigenvalue classes (n-sub-multisets of the
root pool); the multivariate path assembles a transform from sampled
variety points.  Both enforce the same relative residual acceptance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import linalg
from .errors import (
    DegreeZero,
    DimensionMismatch,
    FactorCheckFailed,
    InsufficientRoots,
    NoPointsFound,
    NotASolution,
    NotSimultaneouslyDiagonalizable,
    SingularMatrix,
    TransformSingular,
)
from .polymatrix import (
    MatrixPolynomial,
    VarietyPoint,
    det_poly_univariate,
    evaluate,
    null_vectors_at,
    poly_roots,
    sample_variety,
    total_degree,
)


class Orientation(Enum):
    UNKNOWNS_LEFT = "left"
    UNKNOWNS_RIGHT = "right"
    SANDWICH_BIVARIATE = "sandwich"


#: Exponent tuple occupied by each named slot of the bivariate sandwich template.
SANDWICH_SLOTS = {
    "A": (2, 0),
    "B": (0, 2),
    "C": (1, 1),
    "D": (1, 0),
    "E": (0, 1),
    "F": (0, 0),
}


@dataclass(frozen=True)
class StructuredEquation:
    """A matrix polynomial equated to zero, with an unknown-placement tag."""

    poly: MatrixPolynomial
    orientation: Orientation

    def __post_init__(self):
        if not isinstance(self.orientation, Orientation):
            raise DimensionMismatch(f"invalid orientation {self.orientation!r}")
        if self.orientation is Orientation.SANDWICH_BIVARIATE:
            if self.poly.arity != 2:
                raise DimensionMismatch("sandwich orientation requires arity 2")
            allowed = set(SANDWICH_SLOTS.values())
            for exps in self.poly.terms:
                if exps not in allowed:
                    raise DimensionMismatch(
                        f"term {exps} falls outside the six-slot sandwich template"
                    )

    @property
    def dim(self) -> int:
        return self.poly.dim

    @property
    def arity(self) -> int:
        return self.poly.arity


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and sampling knobs shared by the solve operations."""

    tol_rank: float = 1e-10
    tol_residual: float = 1e-8
    tol_zero: float = 1e-6
    max_classes: int = 200
    sample_count: int = 32
    seed: int = 0
    strategy: str = "grid"

    def __post_init__(self):
        for name in ("tol_rank", "tol_residual", "tol_zero"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_classes < 1:
            raise ValueError("max_classes must be >= 1")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if self.strategy not in ("grid", "random"):
            raise ValueError(f"strategy must be 'grid' or 'random', got {self.strategy!r}")


@dataclass
class SolutionFamily:
    """One reconstructed solution: a shared transform plus eigenvalue diagonals.

    ``transform`` is the right-eigenvector stack T for UNKNOWNS_RIGHT and the
    left-eigenvector stack W = T^{-1} for UNKNOWNS_LEFT.
    """

    transform: np.ndarray
    eigenvalues: list[np.ndarray]
    unknowns: list[np.ndarray]
    residual: float
    transform_condition: float


@dataclass
class Diagnostic:
    """A non-silent per-class or per-attempt failure record."""

    label: str
    failure: str


@dataclass
class SolveResult:
    families: list[SolutionFamily] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)


def _fmt_c(z: complex) -> str:
    return f"{z.real:.6g}{z.imag:+.6g}j"


def _monomial(powers: list[list[np.ndarray]], exps: tuple[int, ...], n: int) -> np.ndarray:
    acc = np.eye(n, dtype=np.complex128)
    for s, e in enumerate(exps):
        if e:
            acc = acc @ powers[s][e]
    return acc


def _matrix_powers(x: np.ndarray, kmax: int) -> list[np.ndarray]:
    out = [np.eye(x.shape[0], dtype=np.complex128)]
    for _ in range(kmax):
        out.append(out[-1] @ x)
    return out


def equation_lhs(eq: StructuredEquation, unknowns) -> np.ndarray:
    """Left-hand side of the equation at candidate unknown matrices."""
    n = eq.dim
    xs = [linalg.as_matrix(x) for x in unknowns]
    if len(xs) != eq.arity:
        raise DimensionMismatch(
            f"expected {eq.arity} unknowns, got {len(xs)}"
        )
    for x in xs:
        if x.shape != (n, n):
            raise DimensionMismatch(f"unknown has shape {x.shape}, expected {(n, n)}")
    if eq.orientation is Orientation.SANDWICH_BIVARIATE:
        x, y = xs
        zero = np.zeros((n, n), dtype=np.complex128)
        slot = {name: eq.poly.terms.get(key, zero) for name, key in SANDWICH_SLOTS.items()}
        return (
            x @ slot["A"] @ x
            + y @ slot["B"] @ y
            + x @ slot["C"] @ y
            + x @ slot["D"]
            + y @ slot["E"]
            + slot["F"]
        )
    kmax = [max((exps[s] for exps in eq.poly.terms), default=0) for s in range(eq.arity)]
    powers = [_matrix_powers(xs[s], kmax[s]) for s in range(eq.arity)]
    acc = np.zeros((n, n), dtype=np.complex128)
    for exps in sorted(eq.poly.terms):
        mono = _monomial(powers, exps, n)
        if eq.orientation is Orientation.UNKNOWNS_LEFT:
            acc += mono @ eq.poly.terms[exps]
        else:
            acc += eq.poly.terms[exps] @ mono
    return acc


def verify_residual(eq: StructuredEquation, unknowns) -> float:
    """Relative Frobenius residual of the equation at candidate unknowns.

    Normalized by 1 + (sum of coefficient norms) * max(1, max ||X_s||_F)^N
    with N the total degree, so the same tolerance is meaningful across
    scales and degrees.
    """
    lhs = equation_lhs(eq, unknowns)
    coeff_sum = sum(float(np.linalg.norm(a)) for a in eq.poly.terms.values())
    xmax = max((float(np.linalg.norm(np.asarray(x))) for x in unknowns), default=0.0)
    denom = 1.0 + coeff_sum * max(1.0, xmax) ** total_degree(eq.poly)
    return float(np.linalg.norm(lhs)) / denom


def eigen_candidates(eq: StructuredEquation) -> list[tuple[complex, int]]:
    """Roots of the determinant polynomial: the eigenvalue pool for all solutions."""
    if eq.arity != 1:
        raise DimensionMismatch("eigen_candidates needs a univariate equation")
    return poly_roots(det_poly_univariate(eq.poly))


def iter_solution_classes(pool, n: int):
    """Yield all n-element sub-multisets of the root pool in lexicographic order."""
    items = sorted(pool, key=lambda rm: linalg.lex_key(rm[0]))
    total = sum(mult for _, mult in items)
    if total < n:
        raise InsufficientRoots(
            f"root pool has total multiplicity {total} < dimension {n}"
        )
    suffix = [0] * (len(items) + 1)
    for i in range(len(items) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + items[i][1]

    def rec(idx: int, remaining: int):
        if remaining == 0:
            yield ()
            return
        if idx == len(items):
            return
        root, mult = items[idx]
        top = min(mult, remaining)
        for take in range(top, -1, -1):
            if suffix[idx + 1] < remaining - take:
                continue
            for tail in rec(idx + 1, remaining - take):
                yield (root,) * take + tail

    yield from rec(0, n)


def enumerate_classes(pool, n: int, cap: int) -> list[tuple[complex, ...]]:
    """First ``cap`` solution classes in lexicographic order."""
    return list(itertools.islice(iter_solution_classes(pool, n), cap))


def _select_directions(basis: list[np.ndarray], current: list[np.ndarray], r: int) -> list[np.ndarray]:
    # pick r unit vectors inside span(basis) maximizing independence from the
    # already stacked vectors; any combination of null vectors is still null
    B = np.column_stack(basis)
    if current:
        S = np.column_stack(current)
        proj, *_ = np.linalg.lstsq(S, B, rcond=None)
        G = B - S @ proj
    else:
        G = B
    _, _, vh = np.linalg.svd(G)
    chosen = []
    for i in range(r):
        v = B @ vh[i].conj()
        nrm = np.linalg.norm(v)
        if nrm > 0:
            v = v / nrm
        chosen.append(v)
    return chosen


def _assemble_family(eq, eigen_lists, vectors, cfg):
    n = eq.dim
    if eq.orientation is Orientation.UNKNOWNS_LEFT:
        stack = np.vstack([np.asarray(v).reshape(1, -1) for v in vectors])
    else:
        stack = np.column_stack(vectors)
    svals = np.linalg.svd(stack, compute_uv=False)
    if svals[-1] <= cfg.tol_rank * svals[0]:
        return None, (
            f"TransformSingular: smallest stack singular value {svals[-1]:.3e}"
            f" <= tol_rank * {svals[0]:.3e}"
        )
    try:
        stack_inv, cond = linalg.inverse(stack, tol_rank=cfg.tol_rank)
    except SingularMatrix as exc:
        return None, f"TransformSingular: {exc}"
    unknowns = []
    for lam in eigen_lists:
        d = np.diag(np.asarray(lam, dtype=np.complex128))
        if eq.orientation is Orientation.UNKNOWNS_LEFT:
            unknowns.append(stack_inv @ d @ stack)
        else:
            unknowns.append(stack @ d @ stack_inv)
    resid = verify_residual(eq, unknowns)
    if resid > cfg.tol_residual:
        return None, f"residual {resid:.3e} exceeds tol_residual {cfg.tol_residual:.0e}"
    family = SolutionFamily(
        transform=stack,
        eigenvalues=[np.asarray(lam, dtype=np.complex128) for lam in eigen_lists],
        unknowns=unknowns,
        residual=resid,
        transform_condition=cond,
    )
    return family, None


def solve_univariate(eq: StructuredEquation, cfg: SolverConfig | None = None) -> SolveResult:
    """Solve a one-unknown equation by eigenvalue-class enumeration.

    Every n-sub-multiset of the determinant-polynomial roots is a candidate
    spectrum.  For each class, null vectors of P at the class roots are
    stacked into the transform; a root of multiplicity r consumes r
    orthonormal null vectors and the class fails if the null space is
    thinner.  Classes with singular stacks or failing residuals are
    reported in the diagnostics, never returned.
    """
    cfg = cfg or SolverConfig()
    if eq.arity != 1:
        raise DimensionMismatch("solve_univariate needs a univariate equation")
    if eq.orientation is Orientation.SANDWICH_BIVARIATE:
        raise DimensionMismatch("sandwich orientation is not univariate")
    n = eq.dim
    try:
        pool = eigen_candidates(eq)
    except DegreeZero as exc:
        raise InsufficientRoots(str(exc)) from exc
    side = "left" if eq.orientation is Orientation.UNKNOWNS_LEFT else "right"
    null_cache = {
        root: null_vectors_at(eq.poly, [root], side, cfg.tol_zero) for root, _ in pool
    }
    gen = iter_solution_classes(pool, n)
    classes = list(itertools.islice(gen, cfg.max_classes))
    diagnostics: list[Diagnostic] = []
    if next(gen, None) is not None:
        diagnostics.append(
            Diagnostic("class enumeration", f"truncated at max_classes={cfg.max_classes}")
        )
    families: list[SolutionFamily] = []
    for cls in classes:
        label = "class (" + ", ".join(_fmt_c(r) for r in cls) + ")"
        vectors: list[np.ndarray] = []
        eigs: list[complex] = []
        failure = None
        for root, group in itertools.groupby(cls):
            r = len(list(group))
            basis = null_cache[root]
            if len(basis) < r:
                failure = (
                    f"null space at {_fmt_c(root)} has dimension {len(basis)}"
                    f" < required multiplicity {r}"
                )
                break
            vectors.extend(_select_directions(basis, vectors, r))
            eigs.extend([root] * r)
        if failure is not None:
            diagnostics.append(Diagnostic(label, failure))
            continue
        family, fail = _assemble_family(eq, [eigs], vectors, cfg)
        if family is None:
            diagnostics.append(Diagnostic(label, fail))
            continue
        families.append(family)
    return SolveResult(families=families, diagnostics=diagnostics)


def _greedy_select(points: list[VarietyPoint], n: int) -> list[VarietyPoint] | None:
    if len(points) < n:
        return None
    start = min(range(len(points)), key=lambda i: points[i].det_residual)
    chosen = [start]
    stacked = [points[start].null_vector]
    while len(chosen) < n:
        best_j, best_s = -1, -1.0
        for j in range(len(points)):
            if j in chosen:
                continue
            svals = np.linalg.svd(
                np.column_stack(stacked + [points[j].null_vector]), compute_uv=False
            )
            if svals[-1] > best_s:
                best_j, best_s = j, float(svals[-1])
        chosen.append(best_j)
        stacked.append(points[best_j].null_vector)
    return [points[j] for j in chosen]


def family_from_points(
    eq: StructuredEquation, points: list[VarietyPoint], cfg: SolverConfig | None = None
) -> SolutionFamily:
    """Assemble one solution family from n variety points.

    Column (row) k of the stacked bracket equals P(point_k) applied to the
    k-th null vector, which vanishes by construction, so any n points with
    an invertible stack yield an exact solution.
    """
    cfg = cfg or SolverConfig()
    n = eq.dim
    if len(points) != n:
        raise DimensionMismatch(f"need exactly {n} points, got {len(points)}")
    pts = sorted(points, key=lambda pt: tuple(linalg.lex_key(v) for v in pt.values))
    vectors = [pt.null_vector for pt in pts]
    eigen_lists = [[pt.values[s] for pt in pts] for s in range(eq.arity)]
    family, fail = _assemble_family(eq, eigen_lists, vectors, cfg)
    if family is None:
        raise TransformSingular(fail)
    return family


def solve_multivariate(eq: StructuredEquation, cfg: SolverConfig | None = None) -> SolveResult:
    """Solve a several-unknown equation from sampled variety points.

    Samples zeros of det P with null vectors on the side matching the
    orientation, then greedily picks n points: start from the smallest
    determinant residual and repeatedly add the point maximizing the
    smallest singular value of the growing stack.  Ill-conditioned
    selections are retried with a fresh seed stream up to 8 attempts.
    """
    cfg = cfg or SolverConfig()
    if eq.arity < 2:
        raise DimensionMismatch("solve_multivariate needs arity >= 2")
    if eq.orientation is Orientation.SANDWICH_BIVARIATE:
        raise DimensionMismatch("no constructive solver exists for the sandwich case")
    side = "left" if eq.orientation is Orientation.UNKNOWNS_LEFT else "right"
    n = eq.dim
    diagnostics: list[Diagnostic] = []
    sampled_any = False
    for attempt in range(8):
        try:
            points = sample_variety(
                eq.poly,
                side,
                count=max(cfg.sample_count, 3 * n),
                seed=cfg.seed + attempt,
                strategy=cfg.strategy,
                tol_zero=cfg.tol_zero,
            )
        except NoPointsFound as exc:
            diagnostics.append(Diagnostic(f"attempt {attempt}", f"NoPointsFound: {exc}"))
            continue
        sampled_any = True
        selected = _greedy_select(points, n)
        if selected is None:
            diagnostics.append(
                Diagnostic(f"attempt {attempt}", f"only {len(points)} points, need {n}")
            )
            continue
        try:
            family = family_from_points(eq, selected, cfg)
        except TransformSingular as exc:
            diagnostics.append(Diagnostic(f"attempt {attempt}", str(exc)))
            continue
        return SolveResult(families=[family], diagnostics=diagnostics)
    if not sampled_any:
        raise NoPointsFound(
            "every sampling attempt came back empty", diagnostics=diagnostics
        )
    raise TransformSingular(
        "no well-conditioned transform within 8 attempts", diagnostics=diagnostics
    )


def quotient_factor(
    eq: StructuredEquation, x, tol_residual: float = 1e-8
) -> MatrixPolynomial:
    """Quotient Q with P(z) = (zI - X) Q(z) for an accepted solution X.

    Q(z) = sum_k z^k B_k with B_k = sum_{j>k} X^{j-k-1} A_j, computed by the
    backward recurrence B_{k-1} = A_k + X B_k.  The identity is checked at
    p*n + 1 sample nodes before returning.
    """
    if eq.arity != 1:
        raise DimensionMismatch("quotient_factor needs a univariate equation")
    if eq.orientation is not Orientation.UNKNOWNS_LEFT:
        raise DimensionMismatch("quotient_factor applies to unknowns-left equations")
    xm = linalg.as_matrix(x)
    n = eq.dim
    if xm.shape != (n, n):
        raise DimensionMismatch(f"candidate has shape {xm.shape}, expected {(n, n)}")
    resid = verify_residual(eq, [xm])
    if resid > tol_residual:
        raise NotASolution(f"residual {resid:.3e} exceeds {tol_residual:.0e}")
    p = max(e for (e,) in eq.poly.terms)
    if p < 1:
        raise DegreeZero("constant equations admit no linear factor")
    zero = np.zeros((n, n), dtype=np.complex128)
    coeffs = [eq.poly.terms.get((k,), zero) for k in range(p + 1)]
    quotient = [zero] * p
    quotient[p - 1] = coeffs[p]
    for k in range(p - 1, 0, -1):
        quotient[k - 1] = coeffs[k] + xm @ quotient[k]
    q = MatrixPolynomial(
        arity=1, dim=n, terms={(k,): quotient[k] for k in range(p)}
    )
    eye = np.eye(n, dtype=np.complex128)
    nodes = np.exp(2j * np.pi * np.arange(p * n + 1) / (p * n + 1))
    for z in nodes:
        pz = evaluate(eq.poly, [z])
        qz = evaluate(q, [z]) if q.terms else zero
        gap = np.linalg.norm(pz - (z * eye - xm) @ qz)
        if gap > 1e-8 * (1.0 + np.linalg.norm(pz)):
            raise FactorCheckFailed(
                f"identity off by {gap:.3e} at z={_fmt_c(z)}"
            )
    return q


def commutation_check(unknowns) -> float:
    """Largest normalized pairwise commutator norm; 0 for a single unknown."""
    xs = [linalg.as_matrix(x) for x in unknowns]
    n = xs[0].shape[0]
    for x in xs:
        if x.shape != (n, n):
            raise DimensionMismatch("unknowns must share one square shape")
    worst = 0.0
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            comm = np.linalg.norm(xs[i] @ xs[j] - xs[j] @ xs[i])
            scale = 1.0 + np.linalg.norm(xs[i]) * np.linalg.norm(xs[j])
            worst = max(worst, float(comm / scale))
    return worst


def dual_equation(eq: StructuredEquation) -> StructuredEquation:
    """Transpose-dual: coefficients transposed, exponent tuples reversed.

    If (X_1, ..., X_m) solves the original, then the reversed transposes
    (X_m^T, ..., X_1^T) solve the dual with the opposite orientation.
    """
    if eq.orientation is Orientation.SANDWICH_BIVARIATE:
        raise DimensionMismatch("the sandwich template has no transpose dual")
    flipped = (
        Orientation.UNKNOWNS_RIGHT
        if eq.orientation is Orientation.UNKNOWNS_LEFT
        else Orientation.UNKNOWNS_LEFT
    )
    terms = {exps[::-1]: a.T.copy() for exps, a in eq.poly.terms.items()}
    return StructuredEquation(
        poly=MatrixPolynomial(arity=eq.arity, dim=eq.dim, terms=terms),
        orientation=flipped,
    )


@dataclass
class SandwichProbeRow:
    alpha: complex
    mu: complex
    scalar_identity: float
    identity_scale: float
    det_probe: float


@dataclass
class SandwichProbeReport:
    """Per-eigenpair sandwich diagnostics.

    ``scalar_identity`` is |g_k P(alpha_k, mu_k) t_k|, the quantity that
    provably vanishes for simultaneously diagonalizable solutions;
    ``det_probe`` is |det P(alpha_k, mu_k)|, reported without a pass/fail
    threshold.
    """

    rows: list[SandwichProbeRow]


def _joint_eigenbasis(x: np.ndarray, y: np.ndarray, tol: float):
    vals, vecs = linalg.eigen(x)
    n = x.shape[0]
    # refine eigenvector choice inside repeated-eigenvalue clusters so that
    # y becomes diagonal there too, when possible
    idx = 0
    while idx < n:
        j = idx + 1
        while j < n and abs(vals[j] - vals[idx]) <= 1e-7 * (1.0 + abs(vals[idx])):
            j += 1
        if j - idx > 1:
            block = vecs[:, idx:j]
            restricted, *_ = np.linalg.lstsq(block, y @ block, rcond=None)
            sub_vals, sub_vecs = np.linalg.eig(restricted)
            order = linalg.lex_argsort(sub_vals)
            refined = block @ sub_vecs[:, order]
            norms = np.linalg.norm(refined, axis=0)
            norms[norms == 0] = 1.0
            vecs[:, idx:j] = refined / norms
        idx = j
    svals = np.linalg.svd(vecs, compute_uv=False)
    if svals[-1] <= 1e-12 * svals[0]:
        raise NotSimultaneouslyDiagonalizable(
            "first matrix has no well-conditioned eigenvector basis"
        )
    vecs_inv, _ = linalg.inverse(vecs, tol_rank=1e-14)
    dx = vecs_inv @ x @ vecs
    dy = vecs_inv @ y @ vecs
    for name, d in (("first", dx), ("second", dy)):
        off = d - np.diag(np.diag(d))
        if np.linalg.norm(off) > tol * (1.0 + np.linalg.norm(d)):
            raise NotSimultaneouslyDiagonalizable(
                f"{name} matrix is not diagonal in the shared basis"
                f" (off-diagonal mass {np.linalg.norm(off):.3e})"
            )
    return vecs, vecs_inv, np.diag(dx), np.diag(dy)


def sandwich_probe(
    eq: StructuredEquation, x, y, tol_joint: float = 1e-6
) -> SandwichProbeReport:
    """Diagnose a candidate (X, Y) pair for the bivariate sandwich equation.

    Extracts a shared eigenbasis from X, validates it against Y, and
    reports, per eigenpair (alpha_k, mu_k), the scalar identity
    g_k P(alpha_k, mu_k) t_k together with |det P| there.
    """
    if eq.orientation is not Orientation.SANDWICH_BIVARIATE:
        raise DimensionMismatch("sandwich_probe needs a sandwich equation")
    xm = linalg.as_matrix(x)
    ym = linalg.as_matrix(y)
    n = eq.dim
    if xm.shape != (n, n) or ym.shape != (n, n):
        raise DimensionMismatch("candidates must be n x n for the equation dimension")
    T, T_inv, alphas, mus = _joint_eigenbasis(xm, ym, tol_joint)
    rows = []
    for k in range(n):
        pk = evaluate(eq.poly, [alphas[k], mus[k]])
        g = T_inv[k]
        t = T[:, k]
        identity = complex(g @ pk @ t)
        scale = float(
            np.linalg.norm(g) * np.linalg.norm(t) * max(1.0, np.linalg.norm(pk))
        )
        rows.append(
            SandwichProbeRow(
                alpha=complex(alphas[k]),
                mu=complex(mus[k]),
                scalar_identity=abs(identity),
                identity_scale=scale,
                det_probe=abs(np.linalg.det(pk)),
            )
        )
    return SandwichProbeReport(rows=rows)
