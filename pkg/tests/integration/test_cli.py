import json

import pytest

from ykh import suites
from ykh.cli import main
from ykh.utils.exceptions import PropertyCheckError

BM = "n=3; s1^5 s2^4 s1^6 s2^-1"
BM_PARTNER = "n=3; s1^5 s2^-1 s1^6 s2^4"


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    for name in ("YKH_CONFIG", "YKH_CACHE_DIR", "YKH_STRATEGY", "YKH_OUTPUT", "YKH_WORKERS", "YKH_ENV", "YKH_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


class TestTrace:
    def test_generator(self, capsys):
        code, out, _ = run(capsys, "trace", "n=2; s1")
        assert code == 0
        assert out[0] == "z"
        assert out[1].startswith("# strategy=memo")

    def test_generic_framing(self, capsys):
        code, out, _ = run(capsys, "trace", "--generic", "--d", "3", "n=1; t1^2 ;")
        assert code == 0
        assert out[0] == "x2"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "trace", "--out", "json", "--strategy", "naive", "n=2; s1")
        report = json.loads(out[0])
        assert code == 0
        assert report["value"] == "z"
        assert report["strategy"] == "naive"


class TestInvariant:
    def test_transverse_unknot(self, capsys):
        code, out, _ = run(capsys, "invariant", "--kind", "m", "--d", "3", "n=1;")
        assert code == 0
        assert out == ["n=1;\tm d=3 D=-\tx2\tcomponents=1 epsilon=0 strands=1 parity=0"]

    def test_theta_line(self, capsys):
        code, out, _ = run(capsys, "invariant", "n=2; s1")
        assert code == 0
        assert out == ["n=2; s1\ttheta d=1 D={0}\t(1)\tcomponents=1 epsilon=1 strands=2 parity=0"]

    def test_all_subsets_when_d_given_alone(self, capsys):
        code, out, _ = run(capsys, "invariant", "--d", "2", "n=2; s1^3")
        assert code == 0
        assert [line.split("\t")[1] for line in out] == ["theta d=2 D={0}", "theta d=2 D={1}", "theta d=2 D={0,1}"]

    def test_homflypt_json(self, capsys):
        code, out, _ = run(capsys, "invariant", "--kind", "homflypt", "--out", "json", "n=2; s1^3")
        report = json.loads(out[0])
        assert code == 0
        assert report["kind"] == "homflypt"
        assert report["d"] == 1
        assert report["components"] == 1

    def test_cache(self, capsys, tmp_path):
        cache_dir = tmp_path / "cache"
        first = run(capsys, "invariant", "--cache", str(cache_dir), "--d", "2", "--D", "0", "n=2; s1^3")
        second = run(capsys, "invariant", "--cache", str(cache_dir), "--d", "2", "--D", "0", "n=2; s1^3")
        assert first[1] == second[1]
        assert len(list(cache_dir.glob("*/*.json"))) == 1

    def test_catalog_entry(self, capsys):
        code, out, _ = run(capsys, "invariant", "--kind", "m", "--d", "2", "--entry", "birman-menasco(a=2,b=2,c=3)")
        assert code == 0
        assert out[0].startswith("birman-menasco(a=2,b=2,c=3)\tm d=2 D=-\t")

    def test_metrics(self, capsys):
        code, out, _ = run(capsys, "invariant", "--metrics", "n=2; s1^3")
        assert code == 0
        assert any("ykh_trace_peels_total" in line for line in out)


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ("invariant", "n=2; s3"),
            ("invariant", "n=2; s1 ?"),
            ("frobnicate",),
            ("invariant", "--d", "0", "n=2; s1"),
            ("invariant", "--d", "2", "--D", "", "n=2; s1"),
            ("invariant", "--entry", "12n_591"),
            ("invariant",),
            ("esystem", "solve", "d=2"),
            ("catalog", "--family", "birman-menasco", "--param", "a=1,b=2,c=3"),
        ],
    )
    def test_input_errors_exit_one(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 1
        assert out == []
        assert "error:" in err

    def test_property_failure_exits_two(self, capsys, monkeypatch):
        def failing(ctx):
            raise PropertyCheckError("forced failure")

        monkeypatch.setitem(suites.SUITES, "esystem", failing)
        code, _, err = run(capsys, "verify", "--suite", "esystem")
        assert code == 2
        assert "forced failure" in err

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "ykh 0.1.0" in capsys.readouterr().out


class TestCompare:
    def test_birman_menasco_pair(self, capsys):
        code, out, _ = run(capsys, "compare", "--kind", "m", "--d", "2", BM, BM_PARTNER)
        assert code == 0
        assert out == [f"{BM} | {BM_PARTNER}\tm d=2 D=-\tEQUAL"]

    def test_chirality(self, capsys):
        code, out, _ = run(capsys, "compare", "n=2; s1^3", "n=2; s1^-3")
        assert code == 0
        assert out[0].endswith("\tDIFFER")

    def test_pair_file(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        path.write_text(f"bm\t{BM}\npartner\t{BM_PARTNER}\n", encoding="utf-8")
        code, out, _ = run(capsys, "compare", "--kind", "m", "--d", "2", "--file", str(path))
        assert code == 0
        assert out == ["bm | partner\tm d=2 D=-\tEQUAL"]

    def test_odd_pair_file(self, capsys, tmp_path):
        path = tmp_path / "pairs.tsv"
        path.write_text(f"bm\t{BM}\n", encoding="utf-8")
        code, _, _ = run(capsys, "compare", "--file", str(path))
        assert code == 1

    def test_homflypt_on_hopf_link(self, capsys):
        code, out, _ = run(capsys, "compare", "--homflypt", "--d", "2", "n=2; s1^2")
        assert code == 0
        assert [line.split("\t")[-1] for line in out] == ["link_equal", "link_equal", "link_differ"]


class TestVerify:
    def test_selected_suites(self, capsys):
        code, out, _ = run(capsys, "verify", "--d", "2", "--suite", "esystem", "--suite", "basis")
        assert code == 0
        assert out == ["esystem: ok (4 checks, d=2)", "basis: ok (8 checks, d=2)"]

    def test_series_order_from_environment(self, capsys, monkeypatch):
        orders = []
        original = suites.vassiliev_coefficients

        def recording(d, subset, word, order, engine):
            orders.append(order)
            return original(d, subset, word, order, engine)

        monkeypatch.setattr(suites, "vassiliev_coefficients", recording)
        monkeypatch.setenv("YKH_SERIES_ORDER", "2")
        code, out, _ = run(capsys, "verify", "--suite", "vassiliev", "--count", "1")
        assert code == 0
        assert out == ["vassiliev: ok (2 checks, d=1)"]
        assert set(orders) == {2}


class TestESystem:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "esystem", "list", "d=2")
        assert code == 0
        assert out == ["d=2 D={0} E=1 x1=[1]ζ2", "d=2 D={1} E=1 x1=[-1]ζ2", "d=2 D={0,1} E=1/2 x1=[0]ζ2"]

    def test_solve(self, capsys):
        code, out, _ = run(capsys, "esystem", "solve", "--D", "1", "d=2")
        assert code == 0
        assert out == ["d=2 D={1} E=1 x1=[-1]ζ2"]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "esystem", "list", "--out", "json", "d=2")
        reports = [json.loads(line) for line in out]
        assert code == 0
        assert [r["E"] for r in reports] == ["1", "1", "1/2"]
        assert [r["character"] for r in reports] == [True, True, False]


class TestCatalog:
    def test_families(self, capsys):
        code, out, _ = run(capsys, "catalog", "--families")
        assert code == 0
        assert len(out) == 11
        assert out[0].startswith("birman-menasco\ta,b,c\t")

    def test_family_instance(self, capsys):
        code, out, _ = run(capsys, "catalog", "--family", "power", "--param", "p=2")
        assert code == 0
        assert out == ["power(p=2)\tn=2; s1^2"]

    def test_builtin_listing(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0
        assert "# 12n_591\t(word supplied externally)" in out

    def test_file_validation(self, capsys, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("ok\tn=2; s1\nbroken\n", encoding="utf-8")
        code, _, err = run(capsys, "catalog", "--file", str(path))
        assert code == 1
        assert "line 2" in err

    def test_file_that_is_not_utf8(self, capsys, tmp_path):
        path = tmp_path / "latin.tsv"
        path.write_bytes(b"k1\tn=2; s1^3 \xff\xfe\n")
        code, out, err = run(capsys, "invariant", "--file", str(path))
        assert code == 1
        assert out == []
        assert "not valid UTF-8" in err
        assert "internal failure" not in err
