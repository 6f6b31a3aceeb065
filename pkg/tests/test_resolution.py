from topzeta.equitree import Bamboo, Face, LEAF, annotate
from topzeta.lattice import PrimitiveVector
from topzeta.resolution import (DivisorNode, ResolutionGraph, build_graph,
                                build_graph_nondegenerate,
                                chain_determinant_check, definitional_zeta,
                                euler_characteristic_total)
from topzeta.zeta import rf, zeta_general, zeta_nondegenerate


def annotated(*faces):
    return annotate(Bamboo(tuple(faces)))


CUSP = annotated(Face(2, 3, (LEAF,)))
TWO_PAIR = annotated(Face(2, 3, (Bamboo((Face(2, 7, (LEAF,)),)),)))


def exceptional(graph):
    return [n for n in graph.nodes if n.kind == "exceptional"]


def test_cusp_graph_layout():
    g = build_graph(CUSP)
    data = [((n.vector.a, n.vector.b), n.mult, n.nu, n.chi) for n in exceptional(g)]
    assert data == [((1, 1), 2, 2, 1), ((2, 3), 6, 5, -1), ((1, 2), 3, 3, 1)]
    branches = [n for n in g.nodes if n.kind == "branch"]
    assert len(branches) == 1
    assert all((n.mult, n.nu) == (1, 1) for n in branches)
    assert len(g.edges) == 3


def test_node_graph_layout():
    g = build_graph_nondegenerate([(1, 1, 2)])
    exc = exceptional(g)
    assert [(n.mult, n.nu, n.chi) for n in exc] == [(2, 2, 0)]
    assert sum(1 for n in g.nodes if n.kind == "branch") == 2


def test_two_pair_graph_attachment():
    g = build_graph(TWO_PAIR)
    root_chain, sub_chain = g.chains
    assert root_chain.path == () and sub_chain.path == ((0, 0),)
    # the sub-bamboo hangs off the principal vertex of the root chain
    principal = next(n for n in g.nodes if n.vector == PrimitiveVector(2, 3))
    first_sub = sub_chain.node_ids[0]
    assert (principal.id, first_sub) in g.edges
    # principal vertices keep their annotated multiplicities
    sub_principal = next(n for n in g.nodes if n.vector == PrimitiveVector(2, 7))
    assert (sub_principal.mult, sub_principal.nu) == (38, 17)


def test_definitional_zeta_examples():
    assert definitional_zeta(build_graph(CUSP)) == rf(1, (5, 4), [(1, 1), (6, 5)])
    node = build_graph_nondegenerate([(1, 1, 2)])
    assert definitional_zeta(node) == rf(1, (1,), [((1, 1), 2)])


def test_definitional_matches_closed_forms():
    for tree in (CUSP, TWO_PAIR,
                 annotated(Face(3, 4, (LEAF,)), Face(2, 3, (LEAF, LEAF)))):
        assert definitional_zeta(build_graph(tree)) == zeta_general(tree)
    for faces in ([(2, 3, 1)], [(1, 2, 1)], [(3, 2, 1), (2, 3, 1)], [(1, 1, 2)]):
        assert definitional_zeta(build_graph_nondegenerate(faces)) == \
            zeta_nondegenerate(faces)


def test_extra_rays_leave_zeta_unchanged():
    base = definitional_zeta(build_graph(TWO_PAIR))
    for seed in (1, 2, 3):
        refined = build_graph(TWO_PAIR, extra_rays=3, seed=seed)
        assert definitional_zeta(refined) == base
        assert chain_determinant_check(refined) is None


def test_extra_rays_preserve_weighted_chi_data():
    # inserted divisors land on chain interiors with chi 0; an insertion in
    # a frame-end cone shifts the degree-one end outward, but the end
    # multiplicity only depends on the segment weights, so the multiset of
    # (N, chi) over divisors with nonzero chi never moves
    base = build_graph(CUSP)
    for seed in (7, 11, 23):
        refined = build_graph(CUSP, extra_rays=2, seed=seed)
        assert len(exceptional(refined)) > len(exceptional(base))
        weighted = lambda g: sorted((n.mult, n.chi) for n in exceptional(g) if n.chi)
        assert weighted(refined) == weighted(base)


def test_chain_determinants_cusp():
    g = build_graph(CUSP)
    # segment below the principal vertex: det 2; above it: -3
    assert g.chains[0].seg_dets == (2, -3)
    assert chain_determinant_check(g) is None


def test_chain_determinant_check_catches_corruption():
    g = build_graph(CUSP)
    nodes = list(g.nodes)
    victim = g.chains[0].node_ids[1]
    n = nodes[victim]
    nodes[victim] = DivisorNode(n.id, n.kind, n.vector, n.mult + 1, n.nu, n.chi)
    bad = ResolutionGraph(tuple(nodes), g.edges, g.chains)
    violation = chain_determinant_check(bad)
    assert violation is not None
    assert victim in violation.edge


def test_euler_characteristic_is_tree_count():
    for tree in (CUSP, TWO_PAIR):
        g = build_graph(tree)
        assert euler_characteristic_total(g) == len(exceptional(g)) + 1
    refined = build_graph(TWO_PAIR, extra_rays=3, seed=4)
    assert euler_characteristic_total(refined) == len(exceptional(refined)) + 1


def test_graph_serialization_is_stable():
    g = build_graph(TWO_PAIR)
    d = g.to_json_dict()
    assert d == build_graph(TWO_PAIR).to_json_dict()
    assert [n["id"] for n in d["nodes"]] == list(range(len(g.nodes)))
    kinds = {n["kind"] for n in d["nodes"]}
    assert kinds == {"exceptional", "branch"}
    branch = next(n for n in d["nodes"] if n["kind"] == "branch")
    assert branch["vector"] is None and branch["chi"] is None
    assert branch["N"] == 1 and branch["nu"] == 1
