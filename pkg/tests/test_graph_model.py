import json

import numpy as np
import pytest

import graphbands as gb


def lasso_style_cell():
    # backbone edge whose ends are glued by the single generator, plus pendant
    return gb.FundamentalCell(
        vertices=(0, 1, 2),
        edges=(gb.Edge(1, 0, 1, 1.2), gb.Edge(2, 2, 0, 0.7)),
        identifications=(gb.Identification(1, plus=1, minus=0),),
        generators=1)


# ---------------------------------------------------------------- validation

def test_valid_cell_empty_report():
    assert gb.validate_cell(lasso_style_cell()) == []


def test_zero_length_reported():
    cell = gb.FundamentalCell(
        vertices=(0, 1), edges=(gb.Edge(1, 0, 1, 0.0),),
        identifications=(), generators=0)
    report = gb.validate_cell(cell)
    assert any("nonpositive length" in r for r in report)


def test_unknown_vertex_in_identification_reported():
    cell = gb.FundamentalCell(
        vertices=(0, 1), edges=(gb.Edge(1, 0, 1, 1.0),),
        identifications=(gb.Identification(1, plus=9, minus=0),),
        generators=1)
    report = gb.validate_cell(cell)
    assert any("unknown vertex" in r for r in report)


def test_more_violations_reported():
    cell = gb.FundamentalCell(
        vertices=(0, 1, 1),
        edges=(gb.Edge(1, 0, 1, 1.0), gb.Edge(1, 0, 7, -2.0)),
        identifications=(gb.Identification(3, plus=0, minus=0),),
        generators=1)
    report = "\n".join(gb.validate_cell(cell))
    assert "duplicate vertex ids" in report
    assert "duplicate edge id" in report
    assert "unknown vertex" in report
    assert "nonpositive length" in report
    assert "outside 1..1" in report
    assert "itself" in report


def test_disconnected_after_identification_reported():
    cell = gb.FundamentalCell(
        vertices=(0, 1, 2, 3),
        edges=(gb.Edge(1, 0, 1, 1.0), gb.Edge(2, 2, 3, 1.0)),
        identifications=(), generators=0)
    assert any("disconnected" in r for r in gb.validate_cell(cell))


def test_magnetic_graph_validates_on_construction():
    with pytest.raises(gb.GraphError) as err:
        gb.MagneticGraph(vertices=(0,), edges=(gb.Edge(1, 0, 5, 1.0, (0,)),),
                         generators=1)
    assert any("unknown vertex" in v for v in err.value.violations)
    with pytest.raises(gb.GraphError):
        gb.MagneticGraph(vertices=(0, 1),
                         edges=(gb.Edge(1, 0, 1, 1.0, (1, 0)),),
                         generators=1)  # flux vector wrong size


# ----------------------------------------------------------------- reduction

def test_bloch_reduce_rejects_invalid_cell():
    cell = gb.FundamentalCell(
        vertices=(0, 1), edges=(gb.Edge(1, 0, 1, -1.0),),
        identifications=(), generators=0)
    with pytest.raises(gb.GraphError) as err:
        gb.bloch_reduce(cell)
    assert err.value.violations


def test_reduce_assigns_unit_flux_and_preserves_length():
    g = gb.bloch_reduce(lasso_style_cell())
    assert g.edge_count == 3  # split loop halves + pendant
    fluxes = sorted(e.flux for e in g.edges)
    assert fluxes == [(0,), (0,), (1,)]
    assert g.total_length == pytest.approx(1.9, abs=0)
    # flux sits on an edge of the split backbone loop
    flux_edge = [e for e in g.edges if e.flux == (1,)][0]
    assert flux_edge.length == pytest.approx(0.6)


def test_reduce_compact_cell_is_identity_with_zero_flux():
    cell = gb.FundamentalCell(
        vertices=(0, 1, 2),
        edges=(gb.Edge(1, 0, 1, 1.0), gb.Edge(2, 1, 2, 2.0)),
        identifications=(), generators=0)
    g = gb.bloch_reduce(cell)
    assert [e.id for e in g.edges] == [1, 2]
    assert all(e.flux == () for e in g.edges)
    assert g.vertices == (0, 1, 2)


def test_reduce_is_deterministic():
    a = gb.bloch_reduce(lasso_style_cell())
    b = gb.bloch_reduce(lasso_style_cell())
    assert a == b


def test_split_loop_matches_analytic_circle():
    # gluing the two ends of a single edge gives the circle graph, whose
    # secular condition cos(kappa) = cos(alpha) is solvable for every k:
    # the whole axis is one band
    cell = gb.FundamentalCell(
        vertices=(0, 1), edges=(gb.Edge(1, 0, 1, 1.0),),
        identifications=(gb.Identification(1, plus=1, minus=0),),
        generators=1)
    g = gb.bloch_reduce(cell)
    assert g.edge_count == 2
    assert sorted(e.length for e in g.edges) == [0.5, 0.5]
    assert sorted(e.flux for e in g.edges) == [(0,), (1,)]
    bs = gb.bond_matrices(g)
    ks = np.random.default_rng(0).uniform(0.0, 40.0, 50)
    assert gb.momentum_membership(bs, ks).all()
    bands = gb.band_intervals(bs, 25.0)
    assert len(bands.bands) == 1
    assert bands.total_measure == pytest.approx(25.0, abs=1e-9)


def test_flux_sign_orientation_convention():
    # edge pointing INTO the plus vertex gets +1, edge pointing out gets -1
    cell = gb.FundamentalCell(
        vertices=(0, 1, 2),
        edges=(gb.Edge(1, 0, 1, 1.0), gb.Edge(2, 1, 2, 1.0)),
        identifications=(gb.Identification(1, plus=1, minus=2),),
        generators=1)
    g = gb.bloch_reduce(cell)
    flux = {e.id: e.flux for e in g.edges}
    assert flux[1] == (1,)   # head was plus
    assert flux[2] == (-1,)  # tail was plus


# ------------------------------------------------------------------ builders

def test_lasso_builder_shape():
    g = gb.build_example("lasso")
    assert g.edge_count == 2
    assert sorted(g.degrees().values()) == [1, 3]
    assert [e.flux for e in g.edges] == [(1,), (0,)]
    assert not g.is_bound


@pytest.mark.parametrize("name,n_edges", [
    ("fig1b", 3), ("fig1c", 4), ("fig1d", 6),
    ("loop_pendant", 3), ("loop_path2", 4), ("loop_triangle", 6)])
def test_builders_edge_counts(name, n_edges):
    g = gb.build_example(name)
    assert g.edge_count == n_edges
    assert g.generators == 1
    assert sum(abs(e.flux[0]) for e in g.edges) == 1


def test_fig1b_bound_to_ones_is_valid():
    g = gb.bind_lengths(gb.build_example("fig1b"), [1.0, 1.0, 1.0])
    assert g.is_bound and g.total_length == pytest.approx(3.0)


def test_unknown_example_rejected():
    with pytest.raises(gb.GraphError):
        gb.build_example("klein_bottle")


# ------------------------------------------------------------------- binding

def test_bind_lengths_checks():
    g = gb.build_example("lasso")
    with pytest.raises(gb.GraphError):
        gb.bind_lengths(g, [1.0])
    with pytest.raises(gb.GraphError):
        gb.bind_lengths(g, [1.0, -1.0])
    bound = gb.bind_lengths(g, [1.5, 0.5])
    assert bound.lengths.tolist() == [1.5, 0.5]
    assert not g.is_bound  # original untouched


def test_unbound_length_access_is_error():
    g = gb.build_example("lasso")
    with pytest.raises(gb.GraphError):
        g.lengths
    with pytest.raises(gb.GraphError):
        gb.bond_matrices(g)


def test_random_lengths_seeded_and_in_range():
    g1 = gb.with_random_lengths(gb.build_example("fig1d"), 7)
    g2 = gb.with_random_lengths(gb.build_example("fig1d"), 7)
    g3 = gb.with_random_lengths(gb.build_example("fig1d"), 8)
    assert np.array_equal(g1.lengths, g2.lengths)
    assert not np.array_equal(g1.lengths, g3.lengths)
    assert np.all((g1.lengths >= 1.0) & (g1.lengths <= 2.0))


# ------------------------------------------------------------- file interface

def test_payload_round_trip_magnetic(tmp_path):
    g = gb.bind_lengths(gb.build_example("lasso"), [1.1, 0.4])
    path = tmp_path / "lasso.json"
    gb.save_graph(path, g)
    back = gb.load_graph(path)
    assert back == g


def test_payload_round_trip_cell(tmp_path):
    cell = lasso_style_cell()
    path = tmp_path / "cell.json"
    gb.save_graph(path, cell)
    back = gb.load_graph(path)
    assert back == cell
    assert gb.as_magnetic(back) == gb.bloch_reduce(cell)


def test_flux_with_identifications_rejected():
    payload = {
        "generators": 1, "vertices": [0, 1],
        "edges": [{"id": 1, "from": 0, "to": 1, "length": 1.0, "flux": [1]}],
        "identifications": [{"generator": 1, "plus": 1, "minus": 0}]}
    with pytest.raises(gb.GraphError) as err:
        gb.from_payload(payload)
    assert "identifications" in str(err.value)


def test_missing_flux_defaults_to_zero():
    payload = {
        "generators": 1, "vertices": [0, 1],
        "edges": [{"id": 1, "from": 0, "to": 1, "length": 1.0}]}
    g = gb.from_payload(payload)
    assert isinstance(g, gb.MagneticGraph)
    assert g.edges[0].flux == (0,)


def test_malformed_payload_and_file(tmp_path):
    with pytest.raises(gb.GraphError):
        gb.from_payload({"vertices": [0]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(gb.GraphError):
        gb.load_graph(bad)
    with pytest.raises(OSError):
        gb.load_graph(tmp_path / "missing.json")


def test_unbound_lengths_survive_json(tmp_path):
    g = gb.build_example("fig1c")
    path = tmp_path / "g.json"
    gb.save_graph(path, g)
    back = gb.load_graph(path)
    assert not back.is_bound
    assert back == g


def test_payload_name_kept():
    payload = json.loads(json.dumps(gb.to_payload(gb.build_example("lasso"))))
    assert payload["name"] == "lasso"
    assert gb.from_payload(payload).name == "lasso"
