import pytest

from lattice import hexgrid, make_heavy_hex
from pegasus import (
    DefectList,
    Embedding,
    PegasusError,
    coupler_class,
    load_defects,
    make_pegasus,
    random_native_embed,
    search_disjoint_tiles,
    tile_heavy_hex,
    verify_embedding,
)
from pegasus.graph import SHIFTS


@pytest.fixture(scope="module")
def p16():
    return make_pegasus(16)


@pytest.fixture(scope="module")
def eagle():
    return make_heavy_hex("eagle127")


@pytest.fixture(scope="module")
def eagle_tiles(eagle, p16):
    return tile_heavy_hex(eagle, p16)


def test_p16_counts(p16):
    assert p16.n_nodes == 5640
    assert p16.n_edges == 40484
    assert p16.index_range == 24 * 16 * 15


def _enumerate_pegasus(m):
    """Fabric qubits and classified couplers of P_m, straight from the line geometry."""
    vert, horiz = SHIFTS
    edges = {}
    for w in range(m):
        for k in range(12):
            for z in range(m - 1):
                x, start = 12 * w + k, 12 * z + vert[k]
                for y in range(start, start + 12):
                    w2, kk = divmod(y, 12)
                    z2 = (x - horiz[kk]) // 12
                    if w2 < m and 0 <= z2 < m - 1:
                        edges[((0, w, k, z), (1, w2, kk, z2))] = "internal"
    fabric = {c for e in edges for c in e}
    for u, w, k, z in fabric:
        if k % 2 == 0 and (u, w, k + 1, z) in fabric:
            edges[((u, w, k, z), (u, w, k + 1, z))] = "odd"
        if (u, w, k, z + 1) in fabric:
            edges[((u, w, k, z), (u, w, k, z + 1))] = "external"
    return fabric, edges


@pytest.mark.parametrize("size, n_nodes, n_edges", [(2, 40, 164), (16, 5640, 40484)])
def test_graph_matches_coordinate_enumeration(size, n_nodes, n_edges):
    pg = make_pegasus(size)
    fabric, edges = _enumerate_pegasus(size)
    assert len(fabric) == pg.n_nodes == n_nodes
    assert len(edges) == pg.n_edges == n_edges
    assert {pg.linear(c) for c in fabric} == set(pg.graph.nodes)

    expected = {frozenset((pg.linear(a), pg.linear(b))): kind for (a, b), kind in edges.items()}
    assert set(expected) == {frozenset(e) for e in pg.graph.edges}
    for p, q in pg.graph.edges:
        kind = expected[frozenset((p, q))]
        assert coupler_class(pg.coord(p), pg.coord(q)) == kind
        assert coupler_class(pg.coord(q), pg.coord(p)) == kind


def test_coupler_class_rejects_non_couplers():
    assert coupler_class((0, 1, 0, 0), (1, 5, 0, 0)) is None      # orthogonal, no crossing
    assert coupler_class((0, 1, 0, 0), (0, 1, 2, 0)) is None      # tracks from different pairs
    assert coupler_class((0, 1, 3, 0), (0, 1, 3, 2)) is None      # same track, z two apart
    assert coupler_class((0, 1, 3, 0), (0, 2, 3, 1)) is None      # different w
    assert coupler_class((0, 1, 2, 4), (0, 1, 3, 4)) == "odd"
    assert coupler_class((1, 0, 7, 2), (1, 0, 7, 3)) == "external"


def test_make_pegasus_defects():
    clean = make_pegasus(4)
    q = min(clean.graph.nodes)
    p, r = sorted(clean.graph.edges)[5]
    damaged = make_pegasus(4, DefectList(nodes=[q], edges=[(p, r)]))
    assert damaged.n_nodes == clean.n_nodes - 1
    assert not damaged.has_node(q)
    assert not damaged.has_edge(p, r)


def test_make_pegasus_rejects_bad_input():
    with pytest.raises(PegasusError):
        make_pegasus(1)
    with pytest.raises(PegasusError):
        make_pegasus(4, DefectList(nodes=[24 * 4 * 3]))

    clean = make_pegasus(4)
    a = min(clean.graph.nodes)
    b = next(q for q in sorted(clean.graph.nodes) if q != a and not clean.has_edge(a, q))
    with pytest.raises(PegasusError, match="not fabric couplers"):
        make_pegasus(4, DefectList(edges=[(a, b)]))
    # (0, 0, 0, 0) sits outside the fabric
    assert not clean.has_node(0)
    with pytest.raises(PegasusError, match="not fabric qubits"):
        make_pegasus(4, DefectList(nodes=[0]))


def test_defects_json(tmp_path):
    path = tmp_path / "defects.json"
    path.write_text('{"nodes": [5, 3, 5], "edges": [[9, 2]]}', encoding="utf-8")
    defects = load_defects(path)
    assert defects.nodes == [3, 5]
    assert defects.edges == [(2, 9)]


def test_eagle_tiles_on_defect_free_p16(eagle, p16, eagle_tiles):
    assert eagle_tiles.n_tiles >= 6
    seen: set[int] = set()
    for emb in eagle_tiles.embeddings:
        assert verify_embedding(emb, eagle, p16).ok
        assert not (emb.images() & seen)
        seen |= emb.images()
    assert [e.tile_index for e in eagle_tiles.embeddings] == list(range(eagle_tiles.n_tiles))


def test_defects_prune_tiles(eagle, eagle_tiles):
    keep = 3
    hit = eagle_tiles.embeddings[keep:]
    defects = DefectList(nodes=[emb.mapping[62] for emb in hit])
    damaged = make_pegasus(16, defects)
    result = tile_heavy_hex(eagle, damaged)
    assert result.n_tiles == keep
    assert all(verify_embedding(e, eagle, damaged).ok for e in result.embeddings)


def test_verify_embedding_reports_violations(p16):
    lattice = hexgrid(1, 1)
    good = random_native_embed(lattice, p16, attempts=20, seed=3).embedding
    assert good is not None

    dup = dict(good.mapping)
    dup[1] = dup[0]
    assert "injectivity" in verify_embedding(Embedding(dup), lattice, p16).kinds()

    missing = dict(good.mapping)
    del missing[5]
    assert "unmapped" in verify_embedding(Embedding(missing), lattice, p16).kinds()

    damaged = make_pegasus(16, DefectList(nodes=[good.mapping[0]]))
    assert "defect" in verify_embedding(good, lattice, damaged).kinds()

    a, b = good.mapping[0], good.mapping[1]
    cut = make_pegasus(16, DefectList(edges=[(a, b)]))
    assert "edge" in verify_embedding(good, lattice, cut).kinds()


def test_random_native_embed_deterministic():
    pg = make_pegasus(4)
    lattice = hexgrid(1, 1)
    first = random_native_embed(lattice, pg, attempts=50, seed=11)
    second = random_native_embed(lattice, pg, attempts=50, seed=11)
    assert first.found
    assert first.embedding.mapping == second.embedding.mapping
    assert first.attempts_used == second.attempts_used
    assert verify_embedding(first.embedding, lattice, pg).ok


def test_random_native_embed_limits():
    small = make_pegasus(2)
    too_big = hexgrid(8, 8)
    result = random_native_embed(too_big, small, attempts=5, seed=0)
    assert not result.found and result.attempts_used == 0

    capped = random_native_embed(hexgrid(1, 1), make_pegasus(4), attempts=3, seed=0, max_steps=1)
    assert not capped.found and capped.attempts_used == 3


def test_search_disjoint_tiles():
    pg = make_pegasus(6)
    lattice = hexgrid(1, 1)
    result = search_disjoint_tiles(lattice, pg, n_tiles=3, attempts=50, seed=5)
    assert result.n_tiles == 3
    used: set[int] = set()
    for emb in result.embeddings:
        assert verify_embedding(emb, lattice, pg).ok
        assert not emb.images() & used
        used |= emb.images()
