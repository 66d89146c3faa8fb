from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

import config
from blockpath import path_lambda, path_table, require_block_graph
from rational_linalg import equal, identity_matrix, inverse, matmul, rank, zeros
from symmetry import require_rcop
from toric_maps import exponent_matrix_endpoint, sigma_indices
from utils import (
    JsonUtils,
    LogUtils,
    ParallelUtils,
    PreconditionError,
    SingularMatrixError,
    VerificationError,
)


@dataclass
class ConcentrationSample:
    """A point K of the colored linear space, with the value chosen per color."""
    matrix: np.ndarray
    color_values: dict

    def to_dict(self):
        return {
            "matrix": [[JsonUtils.render_fraction(x) for x in row] for row in self.matrix.tolist()],
            "color_values": {str(c): JsonUtils.render_fraction(v) for c, v in self.color_values.items()},
        }


def _off_diagonal_value(rng):
    denominator = int(rng.integers(2, config.SAMPLE_MAX_DENOMINATOR + 1))
    numerator = int(rng.integers(1, denominator))
    sign = 1 if rng.integers(0, 2) else -1
    return Fraction(sign * numerator, denominator)


def sample_concentration(g, seed, trial=0, attempt=0):
    """Deterministic strictly diagonally dominant K respecting the coloring.

    Edge classes get nonzero rationals in (-1, 1). Every vertex class gets the
    same dominance base plus its own offset, so distinct classes never share a
    diagonal value.
    """
    rng = np.random.default_rng([seed, trial, attempt])
    values = {}
    for color in g.edge_color_classes():
        values[color] = _off_diagonal_value(rng)

    k = zeros(g.n, g.n)
    for (u, v), color in zip(g.edges, g.edge_colors):
        k[u - 1, v - 1] = values[color]
        k[v - 1, u - 1] = values[color]

    row_sums = [sum((abs(x) for x in k[r]), Fraction(0)) for r in range(g.n)]
    base = 1 + max(row_sums, default=Fraction(0))
    for index, (color, members) in enumerate(g.color_classes().items()):
        values[color] = base + Fraction(index + 1, config.DIAGONAL_OFFSET_DENOMINATOR)
        for v in members:
            k[v - 1, v - 1] = values[color]
    return ConcentrationSample(k, values)


def invert_exact(m):
    """Exact inverse, checked by multiplying back."""
    result = inverse(m)
    if not equal(matmul(np.asarray(m, dtype=object), result), identity_matrix(result.shape[0])):
        raise VerificationError("inverse does not multiply back to the identity")
    return result


def _covariance(g, seed, trial):
    # Dominance rules out singular samples; the retries only guard against bugs
    for attempt in range(config.SINGULAR_RETRY_BUDGET):
        sample = sample_concentration(g, seed, trial, attempt)
        try:
            return sample, invert_exact(sample.matrix)
        except SingularMatrixError:
            LogUtils.warning(f"Singular sample (seed {seed}, trial {trial}, attempt {attempt}); resampling")
    raise SingularMatrixError(f"no nonsingular sample after {config.SINGULAR_RETRY_BUDGET} attempts")


def _evaluate(sigma, move):
    def monomial(side):
        value = Fraction(1)
        for i, j in side:
            value *= sigma[i - 1, j - 1]
        return value
    return monomial(move.plus) - monomial(move.minus)


def _check_indices(g, moves):
    for move in moves:
        for i, j in move.plus + move.minus:
            if not (1 <= i <= g.n and 1 <= j <= g.n):
                raise PreconditionError(f"move {move} uses an index outside 1..{g.n}")


@dataclass
class VanishingReport:
    trials: int
    moves: int
    evaluations: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            "passed": self.passed,
            "trials": self.trials,
            "moves": self.moves,
            "evaluations": self.evaluations,
            "failures": self.failures,
        }


def verify_vanishing(g, basis, trials, seed):
    """Evaluate every binomial on Sigma = K^-1 for `trials` exact samples."""
    g.require_connected()
    basis = list(basis)
    _check_indices(g, basis)
    report = VanishingReport(trials, len(basis))
    if not basis:
        return report

    def run_trial(trial):
        _, sigma = _covariance(g, seed, trial)
        return [(move, _evaluate(sigma, move)) for move in basis]

    for trial, results in enumerate(ParallelUtils.map_ordered(run_trial, range(trials))):
        for move, value in results:
            report.evaluations += 1
            if value != 0:
                report.failures.append({"trial": trial, "move": str(move), "value": JsonUtils.render_fraction(value)})

    if report.passed:
        LogUtils.success(f"{report.evaluations} evaluations vanish exactly")
    else:
        LogUtils.warning(f"{len(report.failures)} of {report.evaluations} evaluations are nonzero")
    return report


@dataclass
class JordanReport:
    closed: bool
    trials: int
    witness: Optional[dict] = None

    def __bool__(self):
        return self.closed

    def to_dict(self):
        return {"closed": self.closed, "trials": self.trials, "witness": self.witness}


def _pattern_violation(g, square):
    for color, members in g.color_classes().items():
        first = members[0]
        for v in members[1:]:
            if square[first - 1, first - 1] != square[v - 1, v - 1]:
                return {
                    "kind": "vertex",
                    "color": str(color),
                    "entries": [[first, first], [v, v]],
                    "values": [JsonUtils.render_fraction(square[first - 1, first - 1]),
                               JsonUtils.render_fraction(square[v - 1, v - 1])],
                }
    for color, edges in g.edge_color_classes().items():
        (a, b) = edges[0]
        for (u, v) in edges[1:]:
            if square[a - 1, b - 1] != square[u - 1, v - 1]:
                return {
                    "kind": "edge",
                    "color": str(color),
                    "entries": [[a, b], [u, v]],
                    "values": [JsonUtils.render_fraction(square[a - 1, b - 1]),
                               JsonUtils.render_fraction(square[u - 1, v - 1])],
                }
    return None


def jordan_square_closed(g, trials, seed):
    """K^2 keeps the color-equality pattern for every sampled K (complete graphs only)."""
    if not g.is_complete():
        raise PreconditionError("Jordan square closure needs a complete graph")
    for trial in range(trials):
        k = sample_concentration(g, seed, trial).matrix
        violation = _pattern_violation(g, matmul(k, k))
        if violation is not None:
            violation["trial"] = trial
            LogUtils.warning(f"K^2 leaves the colored space in trial {trial}")
            return JordanReport(False, trials, violation)
    return JordanReport(True, trials)


@dataclass
class DimensionReport:
    rank: int
    colors: int

    @property
    def equal(self):
        return self.rank == self.colors

    def to_dict(self):
        return {"rank": self.rank, "colors": self.colors, "equal": self.equal}


def rank_dimension_check(g):
    require_block_graph(g)
    require_rcop(g)
    a = exponent_matrix_endpoint(g)
    return DimensionReport(rank(a.entries), len(a.rows))


@dataclass
class SeparationReport:
    trials: int
    checked: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    vanished: list = field(default_factory=list)

    @property
    def separated(self):
        return not self.vanished

    def to_dict(self):
        return {
            "separated": self.separated,
            "trials": self.trials,
            "checked": len(self.checked),
            "skipped": [[list(a), list(b)] for a, b in self.skipped],
            "vanished": self.vanished,
        }


def separation_report(g, pairs=None, trials=1, seed=1):
    """Linear non-moves sigma_ij - sigma_kl (different Lambda) must not vanish.

    Without explicit pairs every pair of indices with different Lambda is
    checked. Pairs whose Lambda agree are skipped and listed.
    """
    require_block_graph(g)
    table = path_table(g)
    if pairs is None:
        pairs = combinations(sigma_indices(g.n), 2)
    report = SeparationReport(trials)
    for a, b in pairs:
        a, b = tuple(sorted(a)), tuple(sorted(b))
        if path_lambda(table[a]) == path_lambda(table[b]):
            report.skipped.append((a, b))
        else:
            report.checked.append((a, b))

    for trial in range(trials):
        _, sigma = _covariance(g, seed, trial)
        for a, b in report.checked:
            if sigma[a[0] - 1, a[1] - 1] == sigma[b[0] - 1, b[1] - 1]:
                report.vanished.append({"trial": trial, "pair": [list(a), list(b)]})
    return report
