"""Pentagon double cover: the degeneration fixture and its full pipeline.

The fixed data here describes the dual graph of the double cover of a
pentagon of five lines (the degenerate plane quintic obtained by
projecting the ten-nodal cubic threefold from a line): ten vertices
a1..a5, b1..b5, twenty edges in involution-paired primed/unprimed pairs,
the nine-edge spanning tree used to build the cycle basis, and the
eleven-cycle homology basis together with the five anti-invariant
generators it projects onto.

Orientation conventions: every edge is oriented (tail, head) exactly as
in the recorded endpoint list, and each basis cycle is the fundamental
cycle of its unique non-tree edge, carrying the recorded sign there.  The
signs are normalized so that the two anti-invariant projections of each
cycle pair agree exactly (they are negatives of each other under the
all-plus normalization).
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

from .exactmat import IntMatrix, rank as matrix_rank
from .graph import (
    GraphError,
    GraphInvolution,
    MultiGraph,
    involution_quotient,
    parse_graph_text,
)
from .homology import fundamental_cycle, is_cycle
from .prym import (
    PrymDicing,
    lattice_from_vectors,
    multipliers as edge_multipliers,
    pi_minus,
    prym_dicing,
    torus_rank,
    vologodsky_check,
    x_minus,
)
from .unimod import (
    CographicCertificate,
    Equivalence,
    e5,
    is_cographic,
    systems_equivalent,
    verify_equivalence,
)

# (label, tail, head) for the ten base edges; the primed partner of
# (x_j, y_k) is (x'_j, y'_k) with a and b exchanged.
_BASE_EDGES = (
    ("e1", "b3", "a2"),
    ("e2", "a4", "b2"),
    ("e3", "a5", "b3"),
    ("e4", "a5", "b4"),
    ("e5", "a5", "b1"),
    ("e6", "a4", "b3"),
    ("e7", "b3", "a1"),
    ("e8", "b2", "a5"),
    ("e9", "a1", "b4"),
    ("e10", "b2", "a1"),
)

TREE_EDGES = frozenset({"e6", "e7", "e8", "e9", "e10", "e10'", "e7'", "e9'", "e8'"})

# Homology basis: (non-tree edge, sign of its coefficient), in basis order.
_CYCLE_SPECS = (
    ("e6'", 1),
    ("e1'", 1),
    ("e1", -1),
    ("e2", 1),
    ("e2'", -1),
    ("e5'", 1),
    ("e5", -1),
    ("e4", 1),
    ("e3", 1),
    ("e4'", -1),
    ("e3'", -1),
)

# Recorded support of each basis cycle, keyed by its non-tree edge.
_CYCLE_SUPPORTS = {
    "e6'": {"e6'", "e7'", "e9'", "e6", "e7", "e9"},
    "e1'": {"e1'", "e7'", "e9'", "e6", "e7", "e10"},
    "e1": {"e1", "e10'", "e9'", "e6"},
    "e2": {"e2", "e6", "e7", "e10"},
    "e2'": {"e2'", "e10'", "e9'", "e6", "e7", "e9"},
    "e5'": {"e5'", "e8'", "e10'", "e9'", "e6", "e7"},
    "e5": {"e5", "e9'", "e6", "e7", "e10", "e8"},
    "e4": {"e4", "e9", "e10", "e8"},
    "e3": {"e3", "e7", "e10", "e8"},
    "e4'": {"e4'", "e9'", "e10'", "e8'"},
    "e3'": {"e3'", "e7'", "e10'", "e8'"},
}

# Index pairs (into the basis order above) whose projections coincide; the
# five pairs generate the anti-invariant lattice.
PROJECTION_PAIRS = ((1, 2), (3, 4), (8, 10), (7, 9), (5, 6))


def _swap_side(v: str) -> str:
    return ("b" if v.startswith("a") else "a") + v[1:]


def build_cover() -> tuple[MultiGraph, GraphInvolution]:
    vertices = [f"a{j}" for j in range(1, 6)] + [f"b{j}" for j in range(1, 6)]
    edges = list(_BASE_EDGES) + [
        (lab + "'", _swap_side(t), _swap_side(h)) for (lab, t, h) in _BASE_EDGES
    ]
    graph = MultiGraph(vertices, edges)
    vmap = {v: _swap_side(v) for v in vertices}
    emap = {}
    for lab, _, _ in _BASE_EDGES:
        emap[lab] = lab + "'"
        emap[lab + "'"] = lab
    return graph, GraphInvolution(graph, vmap, emap)


@dataclass(frozen=True)
class SegreFixture:
    cover: MultiGraph
    involution: GraphInvolution
    tree_edges: frozenset
    homology_basis: tuple  # 11 integral cycles
    anti_invariant_basis: tuple  # 5 half-integral generators

    @property
    def cycle_pairs(self) -> tuple:
        return PROJECTION_PAIRS


def fixture() -> SegreFixture:
    """Build and validate the fixture; any defect in the fixed data fails loudly."""
    cover, iota = build_cover()
    if not iota.is_fixed_point_free():
        raise GraphError("fixture involution must be fixed-point free")
    for v in cover.vertices:
        if cover.degree(v) != 4:
            raise GraphError(f"fixture vertex {v} has degree {cover.degree(v)}, expected 4")
    basis = tuple(
        fundamental_cycle(cover, TREE_EDGES, lab, sign) for lab, sign in _CYCLE_SPECS
    )
    for (lab, _), vec in zip(_CYCLE_SPECS, basis):
        if not is_cycle(cover, vec):
            raise GraphError(f"fixture cycle at {lab} is not a cycle")
        if set(vec.support()) != _CYCLE_SUPPORTS[lab]:
            raise GraphError(f"fixture cycle at {lab} has unexpected support")
    anti = tuple(pi_minus(iota, basis[i]) for i, _ in PROJECTION_PAIRS)
    quotient = involution_quotient(cover, iota)
    if quotient.num_vertices != 5 or quotient.num_edges != 10:
        raise GraphError("quotient of the cover is not a 5-vertex, 10-edge graph")
    endpoints = {frozenset(quotient.endpoints(lab)) for lab in quotient.edge_labels}
    if len(endpoints) != 10 or any(len(e) != 2 for e in endpoints):
        raise GraphError("quotient of the cover is not the complete graph on 5 vertices")
    return SegreFixture(cover, iota, TREE_EDGES, basis, anti)


@dataclass(frozen=True)
class BasisReport:
    """Outcome of re-deriving the recorded bases from first principles."""

    all_cycles: bool
    homology_rank: int
    projection_identities: tuple  # ten booleans, two per generator
    lattice_matches: bool


def validate_basis_data(f: SegreFixture) -> BasisReport:
    """Check every recorded datum exactly; raises naming the offender."""
    for i, vec in enumerate(f.homology_basis):
        if not is_cycle(f.cover, vec):
            bad = next(
                lab
                for lab, c in zip(f.cover.edge_labels, vec.coefficients)
                if c != 0
            )
            raise GraphError(f"basis vector {i} is not a cycle (support starts at {bad})")
    coeff = IntMatrix.from_rows(
        [[int(c) for c in v.coefficients] for v in f.homology_basis]
    )
    hrank = matrix_rank(coeff)
    if hrank != 11:
        raise GraphError(f"homology basis has rank {hrank}, expected 11")
    identities = []
    for gen_index, (first, second) in enumerate(f.cycle_pairs):
        target = f.anti_invariant_basis[gen_index]
        for member in (first, second):
            proj = pi_minus(f.involution, f.homology_basis[member])
            same = proj == target
            identities.append(same)
            if not same:
                delta = proj - target
                lab = next(iter(delta.support()))
                raise GraphError(
                    f"projection of basis vector {member} differs from generator "
                    f"{gen_index} at edge {lab}"
                )
    ell_lattice = lattice_from_vectors(f.cover, f.anti_invariant_basis)
    computed = x_minus(f.cover, f.involution)
    lattice_matches = ell_lattice.same_lattice_as(computed)
    if not lattice_matches:
        raise GraphError("generator lattice differs from the projected cycle lattice")
    return BasisReport(True, hrank, tuple(identities), True)


def dicing_matrix_in_generator_basis(f: SegreFixture) -> IntMatrix:
    """The dicing matrix written in the recorded generator basis.

    Entry (i, j) is the multiplier-scaled j-th coordinate of generator i,
    over the ten unprimed edges; a sign-retaining reading of incidence
    between generators and edges.  Equivalent to the HNF-basis system.
    """
    base_labels = [lab for (lab, _, _) in _BASE_EDGES]
    lattice = lattice_from_vectors(f.cover, f.anti_invariant_basis)
    mult = edge_multipliers(lattice)
    rows = []
    for gen in f.anti_invariant_basis:
        row = []
        for lab in base_labels:
            value = gen[lab] * mult[lab]
            assert value.denominator == 1
            row.append(int(value))
        rows.append(row)
    return IntMatrix.from_rows(rows)


@dataclass(frozen=True)
class DegenerationReport:
    """End-to-end result for the pentagon double cover."""

    vologodsky_passed: bool
    vologodsky_witness: object
    torus_rank: int
    dicing: PrymDicing
    equivalence: Equivalence | None
    equivalence_verified: bool
    e5_cographic: CographicCertificate | None
    conclusion: str


def degeneration_report(
    f: SegreFixture,
    cographic_search: bool = True,
    max_graphs: int | None = None,
) -> DegenerationReport:
    """Run the full pipeline: admissibility, lattice, dicing, comparison.

    The cographic search on the reference system is the long stage (it
    enumerates every candidate multigraph); pass ``cographic_search=False``
    to stop after the equivalence is established.
    """
    vol = vologodsky_check(f.cover, f.involution)
    rank = torus_rank(f.cover, f.involution)
    dicing = prym_dicing(f.cover, f.involution)
    reference = e5()
    equivalence = systems_equivalent(dicing.system, reference)
    verified = equivalence is not None and verify_equivalence(
        dicing.system, reference, equivalence
    )
    certificate = None
    if cographic_search:
        certificate = is_cographic(reference, max_graphs=max_graphs)
    if verified and certificate is not None and not certificate.is_cographic:
        conclusion = "non-cographic dicing obtained"
    elif verified:
        conclusion = "system matches the reference; cographic search skipped"
    else:
        conclusion = "system does not match the reference"
    return DegenerationReport(
        vologodsky_passed=vol.passed,
        vologodsky_witness=vol.witness,
        torus_rank=rank,
        dicing=dicing,
        equivalence=equivalence,
        equivalence_verified=verified,
        e5_cographic=certificate,
        conclusion=conclusion,
    )


def load_fixture_file() -> tuple[MultiGraph, GraphInvolution | None]:
    """Parse the shipped graph-format copy of the cover (for CLI diffing)."""
    text = (
        importlib.resources.files("prymdice")
        .joinpath("data/segre_cover.graph")
        .read_text(encoding="utf-8")
    )
    return parse_graph_text(text)
