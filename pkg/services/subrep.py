"""Subrepresentations of W at exact parameter values.

V₀ is the line through Ψ_1^(1) and V_ad the span of the other Bell vectors. Invariance of each is
checked exactly; irreducibility is certified by Burnside's theorem (the action generates all of
End(W)) for small N, and otherwise only supported by cyclic generation from every Bell vector.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from models.matrix import EchelonSpan, Matrix
from models.report import ReportItem, SuiteReport
from services.bell_rep import bell_frame, bell_labels, bell_position, bell_vector
from services.lie_basis import sl_modified_labels
from services.yangian_action import delta_Jx_explicit, delta_x

logger = logging.getLogger(__name__)

IRREDUCIBLE = 'irreducible'
V0_INVARIANT = 'V0-invariant'
VAD_INVARIANT = 'Vad-invariant'
REDUCIBLE = 'reducible'

QUOTIENTS = {V0_INVARIANT: 'adjoint', VAD_INVARIANT: 'trivial'}


@dataclass
class SubrepReport:
    n: int
    a: Fraction
    b: Fraction
    verdict: str
    v0_invariant: bool
    vad_invariant: bool
    burnside_dimension: Optional[int] = None
    cyclic_vectors: Optional[Dict[str, bool]] = None
    conclusive: bool = True
    warnings: List[str] = field(default_factory=list)

    def verdict_line(self) -> str:
        if self.verdict == V0_INVARIANT:
            return "V0 invariant; quotient = adjoint"
        if self.verdict == VAD_INVARIANT:
            return "Vad invariant; quotient = trivial"
        if self.verdict == REDUCIBLE:
            return f"reducible (Burnside {self.burnside_dimension})" if self.burnside_dimension \
                else "reducible (some Bell vector is not cyclic)"
        if self.burnside_dimension is not None:
            return f"irreducible (Burnside {self.burnside_dimension})"
        return "irreducible (evidence: every Bell vector is cyclic)"

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'a': f"{self.a.numerator}/{self.a.denominator}",
            'b': f"{self.b.numerator}/{self.b.denominator}",
            'verdict': self.verdict,
            'quotient': QUOTIENTS.get(self.verdict),
            'v0_invariant': self.v0_invariant,
            'vad_invariant': self.vad_invariant,
            'burnside_dimension': self.burnside_dimension,
            'cyclic_vectors': self.cyclic_vectors,
            'conclusive': self.conclusive,
            'warnings': self.warnings,
        }


def predicted_verdict(n: int, a: Fraction, b: Fraction) -> str:
    """The case split in a - b: N/2 gives an invariant V₀, -N/2 an invariant V_ad."""
    difference = Fraction(a) - Fraction(b)
    if difference == Fraction(n, 2):
        return V0_INVARIANT
    if difference == -Fraction(n, 2):
        return VAD_INVARIANT
    return IRREDUCIBLE


def action_generators(n: int, a: Fraction, b: Fraction) -> List[Matrix]:
    """The 2(N²-1) matrices Δ(x), Δ(J(x)) on W at the given parameters."""
    labels = sl_modified_labels(n)
    generators = [delta_x(label) for label in labels]
    generators += [delta_Jx_explicit(label).substitute(a, b) for label in labels]
    return generators


def is_v0_invariant(frames: Sequence[Matrix], n: int) -> bool:
    """Every generator maps Ψ_1^(1) into its own line (frames are Bell-basis operators)."""
    position = bell_position(n, 1, 1)
    for frame in frames:
        column = frame.column(position)
        if any(value for index, value in enumerate(column) if index != position):
            return False
    return True


def is_vad_invariant(frames: Sequence[Matrix], n: int) -> bool:
    """No generator produces a Ψ_1^(1) component from the other Bell vectors."""
    singlet_row = bell_position(n, 1, 1)
    for frame in frames:
        for k, m in bell_labels(n):
            if (k, m) != (1, 1) and frame[singlet_row, bell_position(n, k, m)]:
                return False
    return True


def burnside_dimension(generators: Sequence[Matrix], n: int) -> int:
    """Dimension of the unital algebra generated by ``generators`` (closure under left products)."""
    size = n * n
    target = size * size
    span = EchelonSpan(n, target)
    identity = Matrix.identity(n, size)
    span.add(identity.entries())
    frontier = [identity]
    while frontier and span.dimension < target:
        element = frontier.pop()
        for generator in generators:
            product = generator @ element
            if span.add(product.entries()):
                frontier.append(product)
                if span.dimension == target:
                    break
    logger.debug(f"Burnside closure at N={n} reached dimension {span.dimension}")
    return span.dimension


def cyclic_span_dimension(generators: Sequence[Matrix], start: Sequence) -> int:
    n = generators[0].order
    span = EchelonSpan(n, len(start))
    if not span.add(start):
        return 0
    frontier = [tuple(start)]
    while frontier and span.dimension < len(start):
        vector = frontier.pop()
        for generator in generators:
            image = generator.apply(vector)
            if span.add(image):
                frontier.append(image)
    return span.dimension


def analyze_subrep(n: int, a, b, burnside: Optional[bool] = None, max_burnside_n: int = 3,
                   allow_expensive: bool = False) -> SubrepReport:
    a, b = Fraction(a), Fraction(b)
    generators = action_generators(n, a, b)
    frames = [bell_frame(op) for op in generators]
    v0 = is_v0_invariant(frames, n)
    vad = is_vad_invariant(frames, n)
    warnings = []
    run_burnside = n <= max_burnside_n if burnside is None else burnside
    if run_burnside and n > max_burnside_n:
        if not allow_expensive:
            raise ValueError(f"Burnside closure is limited to N <= {max_burnside_n}")
        warnings.append(f"Burnside closure at N={n} beyond the N<={max_burnside_n} budget (O(N^8) work)")
        logger.warning(warnings[-1])

    if v0:
        verdict = V0_INVARIANT
    elif vad:
        verdict = VAD_INVARIANT
    else:
        verdict = IRREDUCIBLE
    report = SubrepReport(n=n, a=a, b=b, verdict=verdict, v0_invariant=v0, vad_invariant=vad,
                          warnings=warnings)
    if run_burnside:
        report.burnside_dimension = burnside_dimension(generators, n)
        if verdict == IRREDUCIBLE and report.burnside_dimension != n ** 4:
            report.verdict = REDUCIBLE
    elif verdict == IRREDUCIBLE:
        report.cyclic_vectors = {
            f"Ψ({k},{m})": cyclic_span_dimension(generators, bell_vector(n, k, m).coeffs) == n * n
            for k, m in bell_labels(n)}
        report.conclusive = False
        if not all(report.cyclic_vectors.values()):
            report.verdict = REDUCIBLE
    logger.info(f"Subrepresentation analysis N={n}, a={a}, b={b}: {report.verdict_line()}")
    return report


def default_parameter_pairs(n: int) -> List[Tuple[Fraction, Fraction]]:
    """Both critical differences plus three generic pairs (|a-b| ≠ N/2 for every N >= 2)."""
    half = Fraction(n, 2)
    return [(half, Fraction(0)), (Fraction(0), half), (Fraction(1, 3), Fraction(0)),
            (Fraction(1), Fraction(1, 5)), (Fraction(2), Fraction(-1, 7))]


def verify_subrep(n: int, pairs: Optional[Sequence[Tuple[Fraction, Fraction]]] = None,
                  burnside: Optional[bool] = None, max_burnside_n: int = 3,
                  allow_expensive: bool = False) -> SuiteReport:
    report = SuiteReport('subrep', n)
    for a, b in dict.fromkeys(pairs or default_parameter_pairs(n)):
        analysis = analyze_subrep(n, a, b, burnside=burnside, max_burnside_n=max_burnside_n,
                                  allow_expensive=allow_expensive)
        report.warnings.extend(analysis.warnings)
        expected = predicted_verdict(n, a, b)
        item = report.add(ReportItem.compare(f"verdict:a={analysis.a},b={analysis.b}",
                                             analysis.verdict, expected,
                                             detail=analysis.to_dict()))
        if not item.passed:
            logger.error(f"{item.id}: got {analysis.verdict}, expected {expected}")
        if not analysis.conclusive:
            report.warnings.append(f"a={analysis.a},b={analysis.b}: irreducibility supported by "
                                   "cyclic generation only (evidence, not proof)")
    return report
