import numpy as np
import pytest

import curvkit as ck
import curvkit.serialize as io


class TestTensorFormat:
    def test_roundtrip_random(self):
        rng = ck.Rng(1)
        curv = ck.random_kahler(3, rng)
        back = io.tensor_from_dict(io.tensor_to_dict(curv))
        np.testing.assert_allclose(back.tensor, curv.tensor, atol=1e-15)

    def test_symmetry_closure_fills_orbit(self):
        doc = {
            "n": 2,
            "entries": [{"i": 1, "j": 1, "k": 1, "l": 2, "re": 1.0, "im": 0.5}],
        }
        curv = io.tensor_from_dict(doc)
        t = curv.tensor
        assert t[0, 0, 0, 1] == 1.0 + 0.5j
        assert t[0, 1, 0, 0] == 1.0 + 0.5j  # second-pair symmetry
        assert t[0, 0, 1, 0] == 1.0 - 0.5j  # conjugation
        assert t[1, 0, 0, 0] == 1.0 - 0.5j
        assert t[0, 0, 0, 0] == 0.0

    def test_forced_real_orbit_rejects_complex(self):
        # R[1,1,2,2] lies in a self-conjugate orbit, so its value must be real
        doc = {
            "n": 2,
            "entries": [{"i": 1, "j": 1, "k": 2, "l": 2, "re": 1.0, "im": 0.5}],
        }
        with pytest.raises(ck.ValidationError):
            io.tensor_from_dict(doc)
        doc["entries"][0]["im"] = 0.0
        t = io.tensor_from_dict(doc).tensor
        assert t[0, 0, 1, 1] == 1.0 and t[1, 1, 0, 0] == 1.0

    def test_unspecified_are_zero(self):
        doc = {"n": 3, "entries": []}
        assert io.tensor_from_dict(doc).max_abs() == 0.0

    def test_conflicting_entries_reported(self):
        doc = {
            "n": 2,
            "entries": [
                {"i": 1, "j": 1, "k": 2, "l": 2, "re": 1.0, "im": 0.0},
                {"i": 2, "j": 1, "k": 1, "l": 2, "re": 3.0, "im": 0.0},
            ],
        }
        with pytest.raises(ck.ValidationError) as err:
            io.tensor_from_dict(doc)
        assert err.value.indices

    def test_forced_real_diagonal(self):
        doc = {"n": 1, "entries": [{"i": 1, "j": 1, "k": 1, "l": 1, "re": 0.0, "im": 2.0}]}
        with pytest.raises(ck.ValidationError):
            io.tensor_from_dict(doc)

    def test_out_of_range_index(self):
        doc = {"n": 2, "entries": [{"i": 3, "j": 1, "k": 1, "l": 1, "re": 1.0, "im": 0.0}]}
        with pytest.raises(ck.InputError):
            io.tensor_from_dict(doc)

    def test_entries_are_orbit_representatives(self):
        rng = ck.Rng(2)
        curv = ck.random_kahler(2, rng)
        doc = io.tensor_to_dict(curv)
        # 16 slots fall into 6 orbits in dimension 2, one entry each
        assert len(doc["entries"]) == 6
        keys = [(e["i"], e["j"], e["k"], e["l"]) for e in doc["entries"]]
        assert keys == sorted(keys)


class TestOtherFormats:
    def test_metric_roundtrip(self):
        rng = ck.Rng(3)
        m = rng.complex_normal((3, 3))
        metric = ck.HermitianMetric(m @ m.conj().T + 3 * np.eye(3))
        back = io.metric_from_dict(io.metric_to_dict(metric))
        np.testing.assert_allclose(back.matrix, metric.matrix)

    def test_form_roundtrip(self):
        rng = ck.Rng(4)
        form = ck.HermitianForm22(rng.complex_normal((6, 6)))
        back = io.form_from_dict(io.form_to_dict(form))
        np.testing.assert_allclose(back.matrix, form.matrix)

    def test_decomposition_roundtrip(self):
        rng = ck.Rng(5)
        dec = ck.decompose(ck.hsc_numerator_form(ck.random_kahler(3, rng)))
        back = io.decomposition_from_dict(io.decomposition_to_dict(dec))
        assert back.N == dec.N
        for a, b in zip(back.pos + back.neg, dec.pos + dec.neg):
            np.testing.assert_allclose(a.matrix, b.matrix)

    def test_decomposition_declared_length_checked(self):
        doc = {"n": 1, "N": 3, "pos": [[[1.0, 0.0]]], "neg": []}
        with pytest.raises(ck.InputError):
            io.decomposition_from_dict(doc)

    def test_subspace_roundtrip_column_major(self):
        rng = ck.Rng(6)
        sub = ck.Subspace(rng.orthonormal(4, 2))
        doc = io.subspace_to_dict(sub)
        assert doc["d"] == 2 and len(doc["basis"]) == 8
        # column-major: the first n pairs are the first basis column
        first = np.array([complex(re, im) for re, im in doc["basis"][:4]])
        np.testing.assert_allclose(first, sub.basis[:, 0])
        back = io.subspace_from_dict(doc)
        np.testing.assert_allclose(back.basis, sub.basis)

    def test_quadrics_roundtrip(self):
        quads, _, _ = ck.sharp_family(5, 2)
        back = io.quadrics_from_dict(io.quadrics_to_dict(quads))
        for a, b in zip(back, quads):
            np.testing.assert_allclose(a.matrix, b.matrix)

    def test_malformed_pairs_rejected(self):
        with pytest.raises(ck.InputError):
            io.metric_from_dict({"n": 1, "g": [[1.0]]})
        with pytest.raises(ck.InputError):
            io.metric_from_dict({"n": 2, "g": [[1.0, 0.0]]})

    def test_dumps_deterministic(self):
        rng = ck.Rng(7)
        curv = ck.random_kahler(2, rng)
        a = io.dumps(io.tensor_to_dict(curv))
        b = io.dumps(io.tensor_to_dict(curv))
        assert a == b
