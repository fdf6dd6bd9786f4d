"""CSV writers and the round-trip reader."""

import numpy as np
import pytest

from pointwalk import csvio
from pointwalk.asymptotics import correction_profile
from pointwalk.errors import ValidationError
from pointwalk.exact import evolve_free
from pointwalk.montecarlo import sample


def test_mass_field_layout(tmp_path, lazy1d):
    field = evolve_free(lazy1d, 3)
    path = tmp_path / "field.csv"
    csvio.write_mass_field(field, path, kernel_hash=lazy1d.content_hash())
    meta, header, cols = csvio.read_table(path)
    assert header == ["x_1", "value"]
    assert meta["kernel"] == lazy1d.content_hash()
    assert int(meta["n"]) == 3
    assert len(cols["value"]) == 2 * field.radius + 1
    # rows in lexicographic site order
    assert cols["x_1"][0] == -field.radius
    assert cols["x_1"][-1] == field.radius
    assert cols["value"].sum() == pytest.approx(1.0)


def test_profile_round_trip_is_exact(tmp_path, lazy1d):
    prof = correction_profile(lazy1d, 40, sites=[(x,) for x in range(-5, 6)])
    path = tmp_path / "profile.csv"
    csvio.write_profile(prof, path)
    meta, header, cols = csvio.read_table(path)
    assert int(meta["dim"]) == 1 and int(meta["n"]) == 40
    # repr round trip: exact float equality after parsing
    assert np.array_equal(cols["exact_correction"], prof.exact_correction)
    assert np.array_equal(cols["delta_quadrature"], prof.delta_quadrature)
    assert np.array_equal(cols["psi_residual"], prof.psi_residual)


def test_empirical_field_round_trip(tmp_path, lazy1d):
    field = sample(lazy1d, 6, 5000, seed=1)
    path = tmp_path / "mc.csv"
    csvio.write_empirical_field(field, path, kernel_hash="abc")
    meta, header, cols = csvio.read_table(path)
    assert header == ["x_1", "value", "count", "stderr"]
    assert int(meta["samples"]) == 5000 and int(meta["seed"]) == 1
    assert cols["count"].sum() == 5000


def test_writers_are_byte_stable(tmp_path, lazy1d):
    prof = correction_profile(lazy1d, 30, sites=[(x,) for x in range(-3, 4)])
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    csvio.write_profile(prof, a)
    csvio.write_profile(prof, b)
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_sweep_writer_uses_caller_header(tmp_path):
    path = tmp_path / "sweep.csv"
    csvio.write_sweep([[1, 2.5], [2, 3.5]], ["n", "v"], path, {"note": "x"})
    meta, header, cols = csvio.read_table(path)
    assert meta == {"note": "x"}
    assert header == ["n", "v"]
    assert list(cols["v"]) == [2.5, 3.5]


def test_reader_rejects_malformed_tables(tmp_path):
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("a,b\n1,2\n3\n")
    with pytest.raises(ValidationError):
        csvio.read_table(ragged)
    headerless = tmp_path / "empty.csv"
    headerless.write_text("# only = comments\n")
    with pytest.raises(ValidationError):
        csvio.read_table(headerless)
