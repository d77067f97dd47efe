import pytest

from ykh.braid import closure_components, parse_word, self_linking
from ykh.catalog import (
    FAMILIES,
    HOMFLYPT_LINK_PAIRS,
    NG_PRESENTATIONS,
    TRANSVERSE_STUDY,
    CatalogEntry,
    builtin_catalog,
    find,
    ingest,
    ingest_lines,
    instantiate,
    parse_line,
    parse_params,
)
from ykh.utils.exceptions import CatalogError, InvalidParameterError


class TestFamilies:
    def test_birman_menasco(self):
        entry = instantiate("birman-menasco", a=2, b=2, c=3)
        assert entry.name == "birman-menasco(a=2,b=2,c=3)"
        assert entry.word.serialize() == "n=3; s1^5 s2^4 s1^6 s2^-1"
        assert entry.expected_self_linking == 11
        assert self_linking(entry.word)[0] == 11
        assert entry.params == (("a", 2), ("b", 2), ("c", 3))

    def test_birman_menasco_partner(self):
        entry = instantiate("birman-menasco-partner", a=2, b=2, c=3)
        assert entry.word.serialize() == "n=3; s1^5 s2^-1 s1^6 s2^4"

    @pytest.mark.parametrize("params", [{"a": 1, "b": 2, "c": 3}, {"a": 2, "b": 3, "c": 4}, {"a": 2, "b": 4, "c": 4}])
    def test_birman_menasco_constraints(self, params):
        with pytest.raises(InvalidParameterError):
            instantiate("birman-menasco", **params)

    def test_khandhawit_ng(self):
        entry = instantiate("khandhawit-ng", a=1, b=0)
        assert entry.word.serialize() == "n=4; s3 s2^-2 s3^4 s2 s3^-1 s1^-1 s2^2 s1"
        with pytest.raises(InvalidParameterError):
            instantiate("khandhawit-ng", a=-1, b=0)

    @pytest.mark.parametrize("p, components", [(1, 1), (2, 2), (3, 1), (4, 2)])
    def test_power_family_components(self, p, components):
        entry = instantiate("power", p=p)
        assert entry.expected_components == components
        assert closure_components(entry.word).count == components

    @pytest.mark.parametrize("name", sorted(FAMILIES))
    def test_expected_components_hold_for_several_parameters(self, name):
        family = FAMILIES[name]
        if family.params == ("p",):
            for p in (1, 2, 3):
                instantiate(name, p=p)
        elif family.params == ("a", "b"):
            for a, b in ((0, 0), (1, 2)):
                instantiate(name, a=a, b=b)
        else:
            for a, b, c in ((2, 2, 3), (3, 2, 3), (2, 4, 2)):
                entry = instantiate(name, a=a, b=b, c=c)
                assert self_linking(entry.word)[0] == entry.expected_self_linking

    def test_missing_and_unknown_parameters(self):
        with pytest.raises(InvalidParameterError):
            instantiate("power")
        with pytest.raises(InvalidParameterError):
            instantiate("power", p=2, q=3)
        with pytest.raises(InvalidParameterError):
            instantiate("trefoils", p=2)

    def test_parse_params(self):
        assert parse_params(["a=2,b=3", "c=4"]) == {"a": 2, "b": 3, "c": 4}
        with pytest.raises(InvalidParameterError):
            parse_params(["a"])
        with pytest.raises(InvalidParameterError):
            parse_params(["a=x"])


class TestBuiltin:
    def test_names_are_unique(self):
        names = [entry.name for entry in builtin_catalog()]
        assert len(names) == len(set(names))

    def test_ng_presentations(self):
        entries = builtin_catalog()
        for name, _, _, sl in NG_PRESENTATIONS:
            for suffix in ("a", "b"):
                entry = find(entries, f"{name}/{suffix}")
                assert entry.expected_components == 1
                assert entry.expected_self_linking == sl
        assert find(entries, "10_128/a").expected_self_linking == 6

    def test_name_only_entries(self):
        entries = builtin_catalog()
        name_only = [entry for entry in entries if not entry.has_word]
        assert len(name_only) == len(TRANSVERSE_STUDY) + 2 * len(HOMFLYPT_LINK_PAIRS)
        assert find(entries, "12n_591").to_line() == "# 12n_591\t(word supplied externally)"

    def test_find_unknown(self):
        with pytest.raises(InvalidParameterError):
            find(builtin_catalog(), "4_1")

    def test_component_mismatch_is_rejected(self):
        with pytest.raises(CatalogError):
            CatalogEntry("bad", parse_word("n=2; s1^2"), "test", expected_components=1)


class TestIngestion:
    def test_parse_line(self):
        entry = parse_line("trefoil\tn=2; s1^3", 1, "test")
        assert entry.name == "trefoil"
        assert entry.word == parse_word("n=2; s1^3")
        assert entry.source == "file:test"

    def test_framed_line_round_trips(self):
        entry = parse_line("loop\tframed\tn=1; t1^2 ;", 1, "test")
        assert entry.to_line() == "loop\tframed\tn=1; t1^2 ;"

    @pytest.mark.parametrize("text", ["", "   ", "# comment", "  # indented comment"])
    def test_blank_and_comment_lines(self, text):
        assert parse_line(text, 1, "test") is None

    @pytest.mark.parametrize(
        "text",
        [
            "only-a-name",
            "a\tb\tc\td",
            "x\tweird\tn=2; s1",
            "x\tn=2; s5",
            "x\tn=2; s1 ?",
            "x\t   ",
            "x \tn=2; s1",
        ],
    )
    def test_malformed_lines(self, text):
        with pytest.raises(CatalogError) as excinfo:
            parse_line(text, 3, "test")
        assert excinfo.value.line == 3
        assert excinfo.value.message.startswith("line 3:")

    def test_duplicate_names(self):
        with pytest.raises(CatalogError) as excinfo:
            ingest_lines(["k\tn=2; s1^3", "# comment", "k\tn=2; s1^-3"])
        assert excinfo.value.line == 3

    def test_ingest_file(self, tmp_path):
        path = tmp_path / "pairs.tsv"
        path.write_text("# pairs\nleft\tn=2; s1^3\n\nright\tn=2; s1^-3\n", encoding="utf-8")
        entries = ingest(path)
        assert [entry.name for entry in entries] == ["left", "right"]
        assert entries[0].source == f"file:{path}"

    def test_missing_file(self, tmp_path):
        with pytest.raises(CatalogError):
            ingest(tmp_path / "absent.tsv")

    def test_file_that_is_not_utf8(self, tmp_path):
        path = tmp_path / "latin.tsv"
        path.write_bytes(b"k1\tn=2; s1^3 \xff\xfe\n")
        with pytest.raises(CatalogError) as excinfo:
            ingest(path)
        assert "not valid UTF-8" in excinfo.value.message
        assert str(path) in excinfo.value.message
