import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from _gen import X, bi_polys, uni_polys
from hypdet import formats
from hypdet.cli import main, minimal_k
from hypdet.detrep import represent
from hypdet.poly import BiPoly, RatFunc, TernaryForm, UniPoly

T = BiPoly.T()
BX = BiPoly.X()
CUBIC = T ** 3 - BX * T ** 2 - 2 * T + BX


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def poly_file(tmp_path, name, f):
    return write(tmp_path, name, formats.poly_to_json(f))


class TestFormats:
    @given(bi_polys)
    @settings(max_examples=60)
    def test_bipoly_round_trip(self, f):
        doc = formats.poly_to_json(f)
        assert formats.poly_from_json(json.loads(json.dumps(doc))) == f
        assert formats.poly_to_json(formats.poly_from_json(doc)) == doc

    @given(uni_polys)
    @settings(max_examples=40)
    def test_unipoly_round_trip(self, p):
        assert formats.uni_from_json(formats.uni_to_json(p)) == p

    @given(uni_polys, uni_polys.filter(lambda p: not p.is_zero()))
    @settings(max_examples=40)
    def test_ratfunc_round_trip(self, a, b):
        r = RatFunc(a, b)
        assert formats.ratfunc_from_str(formats.ratfunc_to_str(r)) == r

    @given(st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(uni_polys, min_size=n, max_size=n), min_size=n, max_size=n)))
    @settings(max_examples=30)
    def test_matrix_round_trip(self, M):
        assert formats.matrix_from_json(formats.matrix_to_json(M)) == M

    def test_ternary_round_trip(self):
        F = TernaryForm.parse("X*Y*Z - 3/2*Z^3 + Y^2*X")
        assert formats.any_poly_from_json(formats.ternary_to_json(F)) == F

    def test_malformed_documents(self):
        with pytest.raises(formats.FormatError):
            formats.poly_from_json({"vars": ["X", "T"], "terms": [{"c": "1", "e": [1]}]})
        with pytest.raises(formats.FormatError):
            formats.poly_from_json({"terms": []})
        with pytest.raises(formats.FormatError):
            formats.poly_from_json({"vars": ["X", "T"], "terms": [{"c": "1/0", "e": [0, 0]}]})

    def test_representation_round_trip(self):
        for f, kw in [(T ** 2 - BX ** 2 - 1, {}), (CUBIC, {"search_bound": 1}),
                      (T ** 2 - BX ** 2 - 2, {})]:
            rep = represent(f, 1, f.degree_t, **kw)
            doc = json.loads(json.dumps(formats.representation_to_json(rep)))
            back = formats.representation_from_json(doc)
            assert back.kind == rep.kind
            assert formats.representation_to_json(back)["kind"] == doc["kind"]

    def test_canonical_bytes(self):
        a = formats.dump(formats.poly_to_json(T ** 2 - BX ** 2 - 1), None)
        b = formats.dump(formats.poly_to_json(-1 - BX ** 2 + T ** 2), None)
        assert a == b


class TestMinimalK:
    def test_examples(self):
        assert minimal_k(T ** 2 - BX ** 2 - 1) == 1
        assert minimal_k(T ** 2 - BX ** 3) == 2
        assert minimal_k(T ** 3 - T) == 0


class TestCommands:
    def test_certify(self, tmp_path, capsys):
        good = poly_file(tmp_path, "good.json", T ** 2 - BX ** 2 - 1)
        bad = poly_file(tmp_path, "bad.json", T ** 2 + BX ** 2 + 1)
        assert main(["certify", "--input", good]) == 0
        out = str(tmp_path / "cert.json")
        assert main(["certify", "--input", bad, "--out", out]) == 1
        assert "x=0" in capsys.readouterr().err
        assert json.loads(open(out).read())["verdict"] == "rejected"

    def test_plot_data(self, tmp_path):
        f = poly_file(tmp_path, "f.json", T ** 2 - BX ** 2 - 1)
        plot = str(tmp_path / "plot.json")
        assert main(["certify", "--input", f, "--plot-data", plot, "--out", str(tmp_path / "c.json")]) == 0
        data = json.loads(open(plot).read())
        assert len(data["x"]) == len(data["roots"])
        x0 = data["x"][0]
        r = (x0 * x0 + 1) ** 0.5
        assert data["roots"][0] == pytest.approx([-r, r])

    def test_perturb(self, tmp_path):
        f = poly_file(tmp_path, "f.json", (T - BX) ** 2 * (T + BX))
        out = str(tmp_path / "tr.json")
        assert main(["perturb", "--input", f, "--epsilon", "1/16", "--out", out]) == 0
        doc = json.loads(open(out).read())
        assert [s["name"] for s in doc["stages"]] == ["M1", "M2", "M3", "M4"]
        assert main(["perturb", "--input", f, "--budget", "0", "--out", out]) == 2

    def test_hermite(self, tmp_path):
        f = poly_file(tmp_path, "f.json", T ** 3 - T)
        out = str(tmp_path / "h.json")
        assert main(["hermite", "--input", f, "--out", out]) == 0
        doc = json.loads(open(out).read())
        assert formats.matrix_from_json(doc["hermite"])[0][0] == UniPoly.const(3)

    def test_represent_and_verify(self, tmp_path):
        f = poly_file(tmp_path, "f.json", T ** 2 - BX ** 2 - 1)
        rep = str(tmp_path / "rep.json")
        assert main(["represent", "--input", f, "--out", rep]) == 0
        assert main(["verify", "--poly", f, "--rep", rep, "--out", str(tmp_path / "v.json")]) == 0
        other = poly_file(tmp_path, "g.json", T ** 2 - BX ** 2)
        assert main(["verify", "--poly", other, "--rep", rep, "--out", str(tmp_path / "v.json")]) == 1
        bare = write(tmp_path, "ns.json", formats.matrix_to_json([[X, 1], [0, -X]]))
        assert main(["verify", "--poly", f, "--rep", bare, "--out", str(tmp_path / "v.json")]) == 2

    def test_represent_cubic(self, tmp_path, capsys):
        f = poly_file(tmp_path, "irred3.json", CUBIC)
        assert main(["represent", "--input", f]) == 2
        assert "NotConstructive" in capsys.readouterr().err
        rep = str(tmp_path / "rep.json")
        assert main(["represent", "--input", f, "--search-bound", "1", "--out", rep]) == 0
        assert main(["verify", "--poly", f, "--rep", rep, "--out", str(tmp_path / "v.json")]) == 0

    def test_represent_with_hint_file(self, tmp_path):
        from hypdet.detrep import search_witness
        f = poly_file(tmp_path, "irred3.json", CUBIC)
        hint = write(tmp_path, "hint.json", formats.witness_to_json(search_witness(CUBIC)))
        assert main(["represent", "--input", f, "--hint", hint, "--out", str(tmp_path / "r.json")]) == 0

    def test_hv(self, tmp_path):
        F = write(tmp_path, "F.json", formats.ternary_to_json(TernaryForm.parse("Z^2 - X^2 - Y^2")))
        out = str(tmp_path / "pen.json")
        assert main(["hv", "--input", F, "--e", "0,0,1", "--out", out]) == 0
        assert json.loads(open(out).read())["verified"]
        G = write(tmp_path, "G.json", formats.ternary_to_json(TernaryForm.parse("X^2 + Y^2 + Z^2")))
        assert main(["hv", "--input", G, "--out", out]) == 1
        assert main(["hv", "--input", F, "--e", "0,1", "--out", out]) == 3

    def test_format_errors(self, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        assert main(["certify", "--input", str(broken)]) == 3
        assert main(["certify", "--input", str(tmp_path / "missing.json")]) == 3
        assert main(["frobnicate"]) == 3
        nonmonic = poly_file(tmp_path, "nm.json", BX * T ** 2 + 1)
        assert main(["certify", "--input", nonmonic]) == 3

    def test_seeded_search_is_reproducible(self, tmp_path, monkeypatch):
        f = poly_file(tmp_path, "irred3.json", CUBIC)
        outs = []
        for name in ("a.json", "b.json"):
            monkeypatch.setenv("HYPDET_SEED", "7")
            out = str(tmp_path / name)
            assert main(["represent", "--input", f, "--search-bound", "1", "--out", out]) == 0
            outs.append(open(out, "rb").read())
        assert outs[0] == outs[1]
        monkeypatch.setenv("HYPDET_SEED", "seven")
        assert main(["represent", "--input", f, "--search-bound", "1"]) == 3


class TestBatch:
    def _manifest(self, tmp_path, tag):
        f = poly_file(tmp_path, "f.json", T ** 2 - BX ** 2 - 1)
        g = poly_file(tmp_path, "g.json", T ** 2 + BX ** 2 + 1)
        jobs = [["certify", "--input", f, "--out", str(tmp_path / f"{tag}-c1.json")],
                ["certify", "--input", g, "--out", str(tmp_path / f"{tag}-c2.json")],
                ["represent", "--input", f, "--out", str(tmp_path / f"{tag}-r.json")],
                ["perturb", "--input", poly_file(tmp_path, "h.json", T ** 2 - BX ** 2),
                 "--out", str(tmp_path / f"{tag}-p.json")]]
        return write(tmp_path, f"{tag}-manifest.json", {"jobs": jobs})

    def test_outputs_are_byte_identical(self, tmp_path):
        codes = []
        for tag, jobs in (("one", "1"), ("two", "2")):
            m = self._manifest(tmp_path, tag)
            codes.append(main(["batch", "--manifest", m, "--jobs", jobs, "--out", str(tmp_path / f"{tag}.json")]))
        assert codes == [1, 1]
        for suffix in ("c1", "c2", "r", "p"):
            assert (tmp_path / f"one-{suffix}.json").read_bytes() == (tmp_path / f"two-{suffix}.json").read_bytes()

    def test_nested_batch_rejected(self, tmp_path):
        m = write(tmp_path, "m.json", {"jobs": [["batch", "--manifest", "x.json"]]})
        assert main(["batch", "--manifest", m]) == 3


def test_console_script_entry_point(tmp_path):
    f = poly_file(tmp_path, "f.json", T ** 2 + BX ** 2 + 1)
    proc = subprocess.run([sys.executable, "-m", "hypdet.cli", "certify", "--input", f],
                          capture_output=True, text=True, env={**os.environ})
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "rejected"
