"""Closed-form predictions about G(R), compared with exact computations.

Each prediction transcribes one published claim as literally as possible and
``verify_instance`` pairs it with the matching search result.  Predictions
never consult the searches, and the searches never consult the predictions.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import invariants as inv
from .graph import (
    BICLIQUE,
    COMPLETE,
    ComponentDecomposition,
    NilpotentGraph,
    build_graph,
    components_classify,
    degree_check,
    is_bipartite_with_parts,
)
from .ring import FiniteRing, NilData, build_ring, factorize, nil_set, radical
from .spectra import (
    SpectrumPrediction,
    UnclassifiableComponent,
    component_spectrum_prediction,
    matrix_build,
    verify_spectrum,
)

NA = "n/a"

THEOREM_IDS = (
    "DegreeLemma",
    "CompleteZ2k",
    "ChromaticNumber2",
    "BipartiteStructure",
    "DecompositionOdd",
    "DecompositionEven",
    "GirthZn",
    "GirthOddRing",
    "GirthEvenRing",
    "CliqueZn",
    "CliqueRing",
    "SpectraZn",
    "SpectraOddRing",
    "BicliqueCount",
    "DominatingZn",
    "DominatingRing",
    "ChromaticIndexClass1",
    "ChromaticIndexEqualsNil",
)
THEOREM_RANK = {name: i for i, name in enumerate(THEOREM_IDS)}

MATCH = "Match"
MISMATCH = "Mismatch"
NOT_APPLICABLE = "NotApplicable"
SKIPPED = "Skipped"


def _json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    ring: str
    predicted: object
    computed: object
    status: str
    hypothesis: str = ""
    note: str = ""

    @property
    def full_note(self) -> str:
        return "; ".join(p for p in (self.hypothesis, self.note) if p)

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "theorem": self.theorem,
            "predicted": _json_value(self.predicted),
            "computed": _json_value(self.computed),
            "status": self.status,
            "note": self.full_note,
        }


@dataclass(frozen=True)
class Caps:
    clique_cap: int = inv.DEFAULT_CLIQUE_CAP
    dominating_cap: int = inv.DEFAULT_DOMINATING_CAP
    coloring_cap: int = inv.DEFAULT_COLORING_CAP

    def __post_init__(self):
        for name in ("clique_cap", "dominating_cap", "coloring_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


# ---------------------------------------------------------------- predictions


def predict_girth_zn(n: int, t: int):
    if n % 2:
        return 4 if t >= 3 else math.inf
    if t >= 3:
        return 3
    if t == 2:
        return 4 if n - t > 4 else math.inf
    return math.inf


def predict_girth_ring(order: int, t: int):
    """General-ring statements: odd order gives 4 or infinite, even order with t >= 3 gives 3."""
    if order % 2:
        return 4 if t >= 3 else math.inf
    return 3 if t >= 3 else NA


def predict_girth(R: FiniteRing, t: int | None = None):
    t = nil_set(R).t if t is None else t
    if R.is_cyclic_spec:
        return predict_girth_zn(R.order, t)
    return predict_girth_ring(R.order, t)


def predict_clique(R: FiniteRing, t: int | None = None) -> int:
    t = nil_set(R).t if t is None else t
    if R.order % 2:
        return 2
    return t if t >= 2 else 2


@dataclass(frozen=True)
class StructurePrediction:
    t: int
    cliques: int
    bicliques: int

    def summary(self) -> str:
        parts = []
        if self.cliques:
            parts.append(f"{self.cliques}xK{self.t}")
        if self.bicliques:
            parts.append(f"{self.bicliques}xK{self.t},{self.t}")
        return " + ".join(parts) or "empty"

    def dominating(self) -> int:
        per_biclique = 1 if self.t == 1 else 2
        return self.cliques + per_biclique * self.bicliques


def predict_structure(R: FiniteRing, t: int | None = None):
    """Odd order: (|R|-t)/(2t) copies of K_{t,t}.  Even Z_n: one K_t plus
    (n-2t)/(2t) copies of K_{t,t}.  Even product rings: n/a."""
    t = nil_set(R).t if t is None else t
    n = R.order
    if n % 2:
        return StructurePrediction(t, 0, (n - t) // (2 * t))
    if R.is_cyclic_spec:
        return StructurePrediction(t, 1, (n - 2 * t) // (2 * t))
    return NA


def predict_structure_zn_odd_corollary(n: int) -> StructurePrediction:
    """Odd n: floor(rad(n)/2) copies of K_{t,t}, counted from the radical."""
    t = n // radical(n)
    return StructurePrediction(t, 0, radical(n) // 2)


@dataclass(frozen=True)
class DominatingPrediction:
    paper: object
    derived: object
    derived_source: str


def predict_dominating(R: FiniteRing, t: int | None = None, decomposition: ComponentDecomposition | None = None):
    """Literal formulas, plus a value counted from component shapes.

    The shape count (1 per K_t or K_{1,1}, 2 per K_{t,t} with t >= 2) uses
    the predicted structure when one exists, otherwise the classified
    components.  It is a cross-check, not a published formula.
    """
    t = nil_set(R).t if t is None else t
    n = R.order
    if n % 2:
        paper = (n - t) // 2
    elif R.is_cyclic_spec:
        paper = (n - 2 * t) // 2 + 1
    else:
        paper = NA
    structure = predict_structure(R, t)
    if structure != NA:
        return DominatingPrediction(paper, structure.dominating(), "predicted structure")
    if decomposition is None:
        return DominatingPrediction(paper, NA, "")
    derived = 0
    for c in decomposition.components:
        if c.kind == COMPLETE or (c.kind == BICLIQUE and c.size == 2):
            derived += 1
        elif c.kind == BICLIQUE:
            derived += 2
        else:
            return DominatingPrediction(paper, NA, "unclassifiable component")
    return DominatingPrediction(paper, derived, "classified components")


def _odd_radical_part(n: int) -> int:
    return math.prod(p for p in factorize(n) if p != 2)


def predict_spectra_zn(n: int, t: int):
    """Literal A/L/Q spectra for G(Z_n), both factorization cases."""
    P = _odd_radical_part(n)
    if n % 2 == 0:
        k = P - 1
        z = (2 * t - 2) * k
        raw = {
            "A": [(t, k), (-t, k), (0, z), (-1, t - 1), (t - 1, 1)],
            "L": [(2 * t, k), (0, k), (t, z), (0, 1), (t, t - 1)],
            "Q": [(2 * t, k), (0, k), (t, z), (2 * t - 2, 1), (t - 2, t - 1)],
        }
    else:
        m = P // 2
        z = (2 * t - 2) * m
        raw = {
            "A": [(t, m), (-t, m), (0, z)],
            "L": [(2 * t, m), (0, m), (t, z)],
            "Q": [(2 * t, m), (0, m), (t, z)],
        }
    return {k: SpectrumPrediction.from_multiset(v, k) for k, v in raw.items()}


def predict_spectra_odd_ring(order: int, t: int):
    m = (order - t) // (2 * t)
    z = 2 * m * (t - 1)
    raw = {
        "A": [(t, m), (-t, m), (0, z)],
        "L": [(2 * t, m), (0, m), (t, z)],
        "Q": [(2 * t, m), (0, m), (t, z)],
    }
    return {k: SpectrumPrediction.from_multiset(v, k) for k, v in raw.items()}


def predict_spectra(R: FiniteRing, t: int | None = None):
    """Z_n formulas for single-factor specs, the odd-order formula for odd
    products, n/a for even-order products."""
    t = nil_set(R).t if t is None else t
    if R.is_cyclic_spec:
        return predict_spectra_zn(R.order, t)
    if R.order % 2:
        return predict_spectra_odd_ring(R.order, t)
    return NA


@dataclass(frozen=True)
class ChromaticIndexPrediction:
    class_claim: int  # χ′ = Δ
    value_claim: int  # χ′ = |Nil(R)|


def predict_chromatic_index(G: NilpotentGraph) -> ChromaticIndexPrediction:
    return ChromaticIndexPrediction(G.max_degree(), G.nil.t)


def two_prime_exponents(n: int):
    f = factorize(n)
    if len(f) != 2:
        return None
    return sorted(f.items())


def predict_bipartite(n: int, t: int | None = None):
    """n = p^a q^b with distinct primes p, q."""
    if two_prime_exponents(n) is None:
        return NA
    t = n // radical(n) if t is None else t
    if n % 2 == 0:
        return t <= 2
    return True


# ---------------------------------------------------------------- witnesses


class WitnessError(AssertionError):
    """A constructed witness failed verification."""


@dataclass(frozen=True)
class BipartitionWitness:
    part_a: tuple[int, ...]
    part_b: tuple[int, ...]
    clique_part: tuple[int, ...] | None = None

    def verify(self, G: NilpotentGraph) -> None:
        for name, part in (("part_a", self.part_a), ("part_b", self.part_b)):
            members = set(part)
            for u in part:
                hit = members.intersection(G.adjacency[u])
                if hit:
                    raise WitnessError(f"edge {u}-{min(hit)} inside {name}")
        covered = set(self.part_a) | set(self.part_b)
        if self.clique_part is not None:
            clique = set(self.clique_part)
            for u in self.clique_part:
                nb = set(G.adjacency[u])
                if clique - {u} - nb:
                    raise WitnessError(f"clique part is not complete at {u}")
                if nb - clique:
                    raise WitnessError(f"clique vertex {u} has a neighbour outside the clique part")
            covered |= clique
        if covered != set(G.vertices):
            raise WitnessError("witness parts do not cover the vertex set")


def construct_bipartition(G: NilpotentGraph) -> BipartitionWitness:
    """Residue-class bipartition of G(Z_n) modulo r = rad(n).

    ``B_i`` collects the vertices congruent to i and ``B_-i`` those congruent
    to -i, for 1 <= i <= ceil(r/2) - 1.  For even n the residue r/2 holds the
    vertices with nilpotent double and is returned as the clique part.
    """
    R = G.ring
    if not R.is_cyclic_spec:
        raise ValueError("the residue-class bipartition is defined for Z_n only")
    n = R.order
    r = radical(n)
    offsets = range(1, (r + 1) // 2)
    part_a = tuple(sorted(x for x in G.vertices if x % r in offsets))
    part_b = tuple(sorted(x for x in G.vertices if (-x) % r in offsets))
    clique = None
    if n % 2 == 0:
        clique = tuple(x for x in G.vertices if G.doubles_nilpotent(x))
    witness = BipartitionWitness(part_a, part_b, clique)
    witness.verify(G)
    return witness


# ---------------------------------------------------------------- verification


@dataclass
class InstanceAnalysis:
    ring: FiniteRing
    nil: NilData
    graph: NilpotentGraph
    decomposition: ComponentDecomposition
    report: inv.InvariantReport
    spectra: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)

    @property
    def has_mismatch(self) -> bool:
        return any(v.status == MISMATCH for v in self.verdicts)


def _judge(theorem, ring, predicted, computed, degenerate, hypothesis="", note="", equal=None):
    if predicted == NA:
        return TheoremVerdict(theorem, ring, NA, computed, NOT_APPLICABLE, hypothesis, note)
    if computed is None:
        return TheoremVerdict(theorem, ring, predicted, None, SKIPPED, hypothesis, note)
    same = (predicted == computed) if equal is None else equal
    if degenerate:
        tag = "degenerate: fewer than 2 vertices"
        note = f"{tag}; {note}" if note else tag
        if same:
            return TheoremVerdict(theorem, ring, predicted, computed, NOT_APPLICABLE, hypothesis, note)
    return TheoremVerdict(theorem, ring, predicted, computed, MATCH if same else MISMATCH, hypothesis, note)


def _na(theorem, ring, hypothesis, computed=None):
    return TheoremVerdict(theorem, ring, NA, computed, NOT_APPLICABLE, hypothesis)


def _certify(G, spectra_cache, prediction_triple):
    """Run nullity certification on A/L/Q, memoising identical predictions."""
    results = {}
    for target in ("A", "L", "Q"):
        P = prediction_triple[target]
        key = (target, P.pairs)
        if ("M", target) not in spectra_cache:
            spectra_cache[("M", target)] = matrix_build(G, target)
        if key not in spectra_cache:
            spectra_cache[key] = verify_spectrum(spectra_cache[("M", target)], P)
        results[target] = spectra_cache[key]
    return results


def _spectra_text(triple) -> str:
    return "; ".join(f"{k}={triple[k]}" for k in ("A", "L", "Q"))


def _spectra_verdict(theorem, ring, triple, checks, hypothesis, note, degenerate):
    predicted = _spectra_text(triple)
    if all(checks[k].ok for k in checks):
        computed = predicted
    else:
        bad = []
        for k, chk in checks.items():
            if not chk.ok:
                rows = ",".join(f"n({l})={z}" for l, m, z in chk.rows if m != z)
                bad.append(f"{k}: {rows or 'multiplicities sum to ' + str(chk.total) + ' != ' + str(chk.dim)}")
        computed = "certification failed " + "; ".join(bad)
    return _judge(theorem, ring, predicted, computed, degenerate, hypothesis, note)


def analyze_instance(R: FiniteRing, caps: Caps = Caps()) -> InstanceAnalysis:
    nil = nil_set(R)
    G = build_graph(R, nil)
    D = components_classify(G)
    report = inv.compute_invariants(G, caps.clique_cap, caps.dominating_cap, caps.coloring_cap)
    out = InstanceAnalysis(R, nil, G, D, report)
    cache: dict = {}
    try:
        component_triple = {k: component_spectrum_prediction(D, k) for k in ("A", "L", "Q")}
        out.spectra = {
            k: {"prediction": component_triple[k], "check": c}
            for k, c in _certify(G, cache, component_triple).items()
        }
    except UnclassifiableComponent:
        component_triple = None
    out.verdicts = _verdicts(R, nil, G, D, report, cache, component_triple)
    return out


def _verdicts(R, nil, G, D, report, cache, component_triple):
    ring = R.spec.canonical_text
    n, t = R.order, nil.t
    nv = len(G.vertices)
    degenerate = nv < 2
    parity = "odd" if n % 2 else "even"
    cyclic = R.is_cyclic_spec
    basic = f"|R|={n} {parity}, |Nil|={t}"
    out = []

    dc = degree_check(G)
    out.append(_judge("DegreeLemma", ring, nv, dc.matching, degenerate, basic,
                      "predicted/computed count vertices whose degree follows the lemma"))

    if cyclic and n & (n - 1) == 0:
        complete = G.edge_count == nv * (nv - 1) // 2
        computed = f"K{nv}" if complete else D.summary()
        out.append(_judge("CompleteZ2k", ring, f"K{n // 2}", computed, degenerate, f"n=2^{n.bit_length() - 1}"))
    else:
        out.append(_na("CompleteZ2k", ring, "needs Z_n with n a power of 2"))

    if cyclic and t == 1:
        out.append(_judge("ChromaticNumber2", ring, 2, report.chi, degenerate, "Nil(Z_n)={0}",
                          _skip_note(report, "chi")))
    else:
        out.append(_na("ChromaticNumber2", ring, "needs Z_n with Nil={0}", report.chi))

    if cyclic and predict_bipartite(n, t) != NA:
        (p, a), (q, b) = two_prime_exponents(n)
        hyp = f"n={p}^{a}*{q}^{b}; stated for the larger exponent on the first prime, applied regardless"
        is_bip, _ = is_bipartite_with_parts(G)
        pred = "bipartite" if predict_bipartite(n, t) else "not bipartite"
        comp = "bipartite" if is_bip else "not bipartite"
        try:
            w = construct_bipartition(G)
            wnote = f"witness ok: |A|={len(w.part_a)} |B|={len(w.part_b)}"
            if w.clique_part is not None:
                wnote += f" clique={len(w.clique_part)}"
        except WitnessError as exc:
            wnote = f"witness failed: {exc}"
            comp += " (witness failed)"
        out.append(_judge("BipartiteStructure", ring, pred, comp, degenerate, hyp, wnote))
    else:
        out.append(_na("BipartiteStructure", ring, "needs Z_n with exactly two distinct primes"))

    structure = predict_structure(R, t)
    if n % 2:
        note = ""
        if cyclic:
            cor = predict_structure_zn_odd_corollary(n)
            note = f"radical count floor(rad/2)={cor.bicliques}"
        out.append(_judge("DecompositionOdd", ring, structure.summary(), D.summary(), degenerate, basic, note))
    else:
        out.append(_na("DecompositionOdd", ring, "needs odd |R|"))
    if n % 2 == 0 and cyclic:
        out.append(_judge("DecompositionEven", ring, structure.summary(), D.summary(), degenerate, basic))
    else:
        out.append(_na("DecompositionEven", ring, "needs Z_n with n even"))

    g = report.girth
    if cyclic:
        out.append(_judge("GirthZn", ring, predict_girth_zn(n, t), g, degenerate, basic))
    else:
        out.append(_na("GirthZn", ring, "needs Z_n", g))
    if n % 2:
        out.append(_judge("GirthOddRing", ring, predict_girth_ring(n, t), g, degenerate, basic))
        out.append(_na("GirthEvenRing", ring, "needs even |R|", g))
    else:
        out.append(_na("GirthOddRing", ring, "needs odd |R|", g))
        pg = predict_girth_ring(n, t)
        if pg == NA:
            out.append(_na("GirthEvenRing", ring, f"needs even |R| and |Nil|>=3 ({basic})", g))
        else:
            out.append(_judge("GirthEvenRing", ring, pg, g, degenerate, basic))

    omega_note = _skip_note(report, "omega")
    pc = predict_clique(R, t)
    if cyclic:
        out.append(_judge("CliqueZn", ring, pc, report.omega, degenerate, basic, omega_note))
    else:
        out.append(_na("CliqueZn", ring, "needs Z_n", report.omega))
    out.append(_judge("CliqueRing", ring, pc, report.omega, degenerate, basic, omega_note))

    if cyclic:
        triple = predict_spectra_zn(n, t)
        checks = _certify(G, cache, triple)
        agree = component_triple is not None and all(triple[k] == component_triple[k] for k in triple)
        case = "case n even" if n % 2 == 0 else "case n odd"
        out.append(_spectra_verdict("SpectraZn", ring, triple, checks, f"{case}, t={t}",
                                    f"literal formula {'equals' if agree else 'differs from'} component-derived spectra",
                                    degenerate))
    else:
        out.append(_na("SpectraZn", ring, "needs Z_n"))
    if n % 2:
        triple = predict_spectra_odd_ring(n, t)
        checks = _certify(G, cache, triple)
        out.append(_spectra_verdict("SpectraOddRing", ring, triple, checks,
                                    f"odd |R|, m={(n - t) // (2 * t)}", "", degenerate))
    else:
        out.append(_na("SpectraOddRing", ring, "needs odd |R|"))

    if n % 2:
        kt = sum(c.kind == BICLIQUE and all(len(p) == t for p in c.parts) for c in D.components)
        computed = kt if kt == len(D.components) else D.summary()
        out.append(_judge("BicliqueCount", ring, (n - t) // (2 * t), computed, degenerate, basic,
                          "computed = number of K_t,t components"))
    else:
        out.append(_na("BicliqueCount", ring, "needs odd |R|"))

    dom = predict_dominating(R, t, D)
    dnote = f"paper={dom.paper} decomposition={dom.derived} oracle={report.gamma}"
    if report.gamma is None:
        dnote += "; " + _skip_note(report, "gamma")
    if cyclic:
        out.append(_judge("DominatingZn", ring, dom.paper, report.gamma, degenerate, basic, dnote))
    else:
        out.append(_na("DominatingZn", ring, "needs Z_n", report.gamma))
    if n % 2:
        out.append(_judge("DominatingRing", ring, dom.paper, report.gamma, degenerate, basic, dnote))
    else:
        out.append(_na("DominatingRing", ring, "needs odd |R|", report.gamma))

    ci = predict_chromatic_index(G)
    cnote = _skip_note(report, "chi_prime")
    sum_colours = inv.constructive_edge_coloring(G).count
    out.append(_judge("ChromaticIndexClass1", ring, ci.class_claim, report.chi_prime, degenerate,
                      f"Delta={ci.class_claim}",
                      "predicted = Delta, computed = exact chromatic index" + (f"; {cnote}" if cnote else "")))
    out.append(_judge("ChromaticIndexEqualsNil", ring, ci.value_claim, report.chi_prime, degenerate,
                      f"|Nil|={t}, Delta={ci.class_claim}",
                      f"x+y colouring uses {sum_colours} colours" + (f"; {cnote}" if cnote else "")))
    out.sort(key=lambda v: THEOREM_RANK[v.theorem])
    return out


def _skip_note(report, key):
    reason = (report.skipped or {}).get(key)
    return f"skipped: {reason}" if reason else ""


def verify_instance(R: FiniteRing, caps: Caps = Caps()) -> list[TheoremVerdict]:
    return analyze_instance(R, caps).verdicts


# ---------------------------------------------------------------- sweeps


def zn_family(max_order: int) -> list[str]:
    return [f"Z{n}" for n in range(2, max_order + 1)]


def product_family(max_order: int) -> list[str]:
    """Two-factor products Z_a x Z_b with 2 <= a <= b and ab <= max_order."""
    out = []
    for a in range(2, max_order + 1):
        for b in range(a, max_order // a + 1):
            out.append(f"Z{a}xZ{b}")
    return out


CSV_COLUMNS = ("ring", "order", "nil_size", "theorem", "predicted", "computed", "status", "note")


def _sweep_one(args):
    text, caps = args
    R = build_ring(text, max_order=10**9)
    try:
        analysis = analyze_instance(R, caps)
    except Exception as exc:  # one bad instance becomes Skipped rows
        nil = nil_set(R)
        return [
            dict(ring=text, order=R.order, nil_size=nil.t, theorem=th, predicted=NA, computed=None,
                 status=SKIPPED, note=f"instance failed: {exc!r}")
            for th in THEOREM_IDS
        ]
    rows = []
    for v in analysis.verdicts:
        row = v.to_json()
        row["order"] = R.order
        row["nil_size"] = analysis.nil.t
        rows.append(row)
    return rows


def _sort_key(row):
    return (row["order"], row["ring"], THEOREM_RANK[row["theorem"]])


@dataclass
class SweepResult:
    rows: list

    @property
    def rings(self) -> list[str]:
        return sorted({r["ring"] for r in self.rows}, key=lambda s: (build_ring(s, 10**9).order, s))

    def counts(self) -> dict:
        table = {th: {MATCH: 0, MISMATCH: 0, NOT_APPLICABLE: 0, SKIPPED: 0} for th in THEOREM_IDS}
        for r in self.rows:
            table[r["theorem"]][r["status"]] += 1
        return table

    def mismatches(self, theorem: str | None = None) -> list:
        return [r for r in self.rows if r["status"] == MISMATCH and (theorem is None or r["theorem"] == theorem)]

    def select(self, theorem: str) -> list:
        return [r for r in self.rows if r["theorem"] == theorem]


def default_workers() -> int:
    env = os.environ.get("NILGRAPH_WORKERS")
    if env:
        return max(1, int(env))
    return 1


def sweep_verify(rings, caps: Caps = Caps(), workers: int | None = None) -> SweepResult:
    """Verify every ring spec in ``rings``; rows are sorted (order, ring, theorem)
    so the result does not depend on the worker count."""
    workers = default_workers() if workers is None else workers
    jobs = [(text, caps) for text in dict.fromkeys(rings)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_sweep_one, jobs, chunksize=4))
    else:
        batches = [_sweep_one(j) for j in jobs]
    rows = [row for batch in batches for row in batch]
    rows.sort(key=_sort_key)
    return SweepResult(rows)
