"""Built-in braid catalog and catalog file ingestion.

The built-in catalog holds the transverse families and presentations the
engine was validated on, the families of knots and links used to compare Θ
with the Homflypt polynomial, and name-only entries whose words come from
user files. Names are opaque strings and are never resolved against any
knot table.

Catalog files have one entry per line::

    # comment
    trefoil<TAB>n=2; s1^3
    framed-loop<TAB>framed<TAB>n=1; t1^2 ;

The optional middle column is the word kind (``classical`` by default).
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import structlog
from pydantic import ValidationError

from .braid import AnyWord, FramedBraidWord, SingularBraidWord, closure_components, parse_word
from .schemas import CatalogLine
from .utils.exceptions import CatalogError, InvalidParameterError, YKHError

logger = structlog.get_logger(__name__)

WORD_KINDS = ("classical", "framed", "singular")


@dataclass(frozen=True)
class CatalogEntry:
    """One named braid word.

    ``word`` is None for name-only entries whose braid word is supplied by a
    catalog file.
    """

    name: str
    word: Optional[AnyWord]
    source: str
    expected_components: Optional[int] = None
    expected_self_linking: Optional[int] = None
    family: Optional[str] = None
    params: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.word is not None and self.expected_components is not None:
            found = closure_components(self.word).count
            if found != self.expected_components:
                raise CatalogError(f"{self.name}: closure has {found} components, expected {self.expected_components}")

    @property
    def has_word(self) -> bool:
        return self.word is not None

    def to_line(self) -> str:
        """Render as a catalog file line."""
        if self.word is None:
            return f"# {self.name}\t(word supplied externally)"
        kind = word_kind(self.word)
        middle = "" if kind == "classical" else f"{kind}\t"
        return f"{self.name}\t{middle}{self.word.serialize()}"


def word_kind(word: AnyWord) -> str:
    if isinstance(word, FramedBraidWord):
        return "framed"
    if isinstance(word, SingularBraidWord):
        return "singular"
    return "classical"


def _s(index: int, exponent: int = 1) -> str:
    if exponent == 0:
        return ""
    return f"s{index}" if exponent == 1 else f"s{index}^{exponent}"


def _join(strands: int, *tokens: str) -> str:
    return f"n={strands}; " + " ".join(t for t in tokens if t)


# ------------------------------------------------------------------ families


@dataclass(frozen=True)
class Family:
    """A parameterized braid family.

    ``build`` returns braid text for validated parameters; ``components``
    returns the expected number of closure components, or None when the
    family does not fix it.
    """

    name: str
    source: str
    params: Tuple[str, ...]
    build: Callable[..., str]
    description: str
    check: Callable[..., Optional[str]] = lambda **_: None
    components: Callable[..., Optional[int]] = lambda **_: None
    self_linking: Callable[..., Optional[int]] = lambda **_: None

    def instantiate(self, **params: int) -> CatalogEntry:
        """Build the entry for one parameter choice.

        Raises:
            InvalidParameterError: If a parameter is missing, unknown or
                violates the family's constraint.
        """
        missing = [p for p in self.params if p not in params]
        unknown = [p for p in params if p not in self.params]
        if missing or unknown:
            raise InvalidParameterError(f"family {self.name} takes parameters {', '.join(self.params)}; got {', '.join(sorted(params)) or 'none'}")
        problem = self.check(**params)
        if problem:
            raise InvalidParameterError(f"family {self.name}: {problem}")
        word = parse_word(self.build(**params))
        label = ",".join(f"{p}={params[p]}" for p in self.params)
        return CatalogEntry(
            name=f"{self.name}({label})",
            word=word,
            source=self.source,
            expected_components=self.components(**params),
            expected_self_linking=self.self_linking(**params),
            family=self.name,
            params=tuple((p, params[p]) for p in self.params),
        )


def _birman_menasco_check(a: int, b: int, c: int) -> Optional[str]:
    if min(a, b, c) <= 1:
        return "a, b and c must all exceed 1"
    if a + 1 == b or b == c:
        return "requires a+1 != b and b != c"
    return None


def _khandhawit_ng_check(a: int, b: int) -> Optional[str]:
    if min(a, b) < 0:
        return "a and b must be non-negative"
    return None


def _positive(**params: int) -> Optional[str]:
    if any(v < 1 for v in params.values()):
        return "parameters must be positive"
    return None


def _parity_components(p: int) -> int:
    return 1 if p % 2 else 2


FAMILIES: Dict[str, Family] = {
    family.name: family
    for family in (
        Family(
            "birman-menasco",
            "transverse-series",
            ("a", "b", "c"),
            lambda a, b, c: _join(3, _s(1, 2 * a + 1), _s(2, 2 * b), _s(1, 2 * c), _s(2, -1)),
            "s1^(2a+1) s2^(2b) s1^(2c) s2^-1, transversely non-simple",
            check=_birman_menasco_check,
            components=lambda **_: 1,
            self_linking=lambda a, b, c: 2 * a + 2 * b + 2 * c - 3,
        ),
        Family(
            "birman-menasco-partner",
            "transverse-series",
            ("a", "b", "c"),
            lambda a, b, c: _join(3, _s(1, 2 * a + 1), _s(2, -1), _s(1, 2 * c), _s(2, 2 * b)),
            "s1^(2a+1) s2^-1 s1^(2c) s2^(2b), partner of birman-menasco",
            check=_birman_menasco_check,
            components=lambda **_: 1,
            self_linking=lambda a, b, c: 2 * a + 2 * b + 2 * c - 3,
        ),
        Family(
            "khandhawit-ng",
            "transverse-series",
            ("a", "b"),
            lambda a, b: _join(4, _s(3), _s(2, -2), _s(3, 2 * a + 2), _s(2), _s(3, -1), _s(1, -1), _s(2, 2), _s(1, 2 * b + 1)),
            "s3 s2^-2 s3^(2a+2) s2 s3^-1 s1^-1 s2^2 s1^(2b+1)",
            check=_khandhawit_ng_check,
        ),
        Family(
            "khandhawit-ng-partner",
            "transverse-series",
            ("a", "b"),
            lambda a, b: _join(4, _s(3), _s(2, -2), _s(3, 2 * a + 2), _s(2), _s(3, -1), _s(1, 2 * b + 1), _s(2, 2), _s(1, -1)),
            "s3 s2^-2 s3^(2a+2) s2 s3^-1 s1^(2b+1) s2^2 s1^-1, partner of khandhawit-ng",
            check=_khandhawit_ng_check,
        ),
        Family(
            "power",
            "homflypt-families",
            ("p",),
            lambda p: _join(2, _s(1, p)),
            "s1^p: knot for odd p, two-component link for even p",
            check=_positive,
            components=_parity_components,
        ),
        Family(
            "power-negative-clasp",
            "homflypt-families",
            ("p",),
            lambda p: _join(3, _s(1, p), _s(2, -1), _s(1, -1), _s(2, -1)),
            "s1^p s2^-1 s1^-1 s2^-1: knot for odd p, link for even p",
            check=_positive,
            components=_parity_components,
        ),
        Family(
            "power-mixed-clasp",
            "homflypt-families",
            ("p",),
            lambda p: _join(3, _s(1, p), _s(2, -1), _s(1), _s(2, -1)),
            "s1^p s2^-1 s1 s2^-1: knot for odd p, link for even p",
            check=_positive,
            components=_parity_components,
        ),
        Family(
            "alternating-cube",
            "homflypt-families",
            ("p",),
            lambda p: _join(3, *([_s(1), _s(2, -1)] * (3 * p))),
            "(s1 s2^-1)^(3p): three-component link",
            check=_positive,
            components=lambda **_: 3,
        ),
        Family(
            "alternating-cube-cubed-head",
            "homflypt-families",
            ("p",),
            lambda p: _join(3, _s(1, 3), _s(2, -1), *([_s(1), _s(2, -1)] * (3 * p - 1))),
            "(s1^3 s2^-1)(s1 s2^-1)^(3p-1): three-component link",
            check=_positive,
            components=lambda **_: 3,
        ),
        Family(
            "even-power-negative-hook",
            "homflypt-families",
            ("p",),
            lambda p: _join(3, _s(1, 2 * p), _s(2), _s(1, -1), _s(2)),
            "s1^(2p) s2 s1^-1 s2: two-component link",
            check=_positive,
            components=lambda **_: 2,
        ),
        Family(
            "even-power-positive-hook",
            "homflypt-families",
            ("p",),
            lambda p: _join(3, _s(1, 2 * p), _s(2), _s(1, 2), _s(2)),
            "s1^(2p) s2 s1^2 s2: three-component link",
            check=_positive,
            components=lambda **_: 3,
        ),
    )
}

# Presentations whose two members were conjectured transversely distinct,
# with the self-linking number reported alongside them.
NG_PRESENTATIONS: Tuple[Tuple[str, str, str, int], ...] = (
    ("m(9_45)", "n=4; s3^-1 s2 s1 s3 s2^-1 s3 s1 s2^2", "n=4; s2^2 s1 s3 s2^-1 s3 s1 s2 s3^-1", 1),
    ("10_128", "n=4; s1 s2 s1 s2 s1 s2 s1 s3^2 s2 s3^-1", "n=4; s3^-1 s2 s3^2 s1 s2 s1 s2 s1 s2 s1", 6),
    ("10_160", "n=4; s2^-1 s3 s2^-1 s1^-1 s3 s2 s3 s2 s3 s1^2", "n=4; s1^2 s3 s2 s3 s2 s3 s1^-1 s2^-1 s3 s2^-1", 1),
)

TRANSVERSE_STUDY = (
    "m(7_2)",
    "m(7_6)",
    "9_44",
    "m(9_45)",
    "9_48",
    "10_128",
    "m(10_132)",
    "10_136",
    "m(10_140)",
    "m(10_145)",
    "10_160",
    "m(10_161)",
    "12n_591",
)

HOMFLYPT_LINK_PAIRS = (
    ("9_50^2", "L10n42"),
    ("9_34^2", "L11n186"),
    ("L11a13", "L11a323"),
    ("L10n79", "L10n95"),
    ("L11n320", "L11n329"),
    ("L11a149", "L11a195"),
    ("L11a184", "L11a207"),
    ("L11a172", "L11a377"),
    ("L11a173", "L11a382"),
)

# Default parameters used when the built-in catalog lists one instance per family.
DEFAULT_PARAMS: Dict[str, Dict[str, int]] = {
    "birman-menasco": {"a": 2, "b": 2, "c": 3},
    "birman-menasco-partner": {"a": 2, "b": 2, "c": 3},
    "khandhawit-ng": {"a": 0, "b": 0},
    "khandhawit-ng-partner": {"a": 0, "b": 0},
    "power": {"p": 3},
    "power-negative-clasp": {"p": 3},
    "power-mixed-clasp": {"p": 3},
    "alternating-cube": {"p": 1},
    "alternating-cube-cubed-head": {"p": 1},
    "even-power-negative-hook": {"p": 1},
    "even-power-positive-hook": {"p": 1},
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise InvalidParameterError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None


def instantiate(name: str, **params: int) -> CatalogEntry:
    """Instantiate a built-in family by name."""
    return get_family(name).instantiate(**params)


def parse_params(assignments: Sequence[str]) -> Dict[str, int]:
    """Parse ``["a=2", "b=3"]`` or ``["a=2,b=3"]`` into a parameter mapping."""
    params: Dict[str, int] = {}
    for chunk in assignments:
        for item in chunk.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            if not sep:
                raise InvalidParameterError(f"parameter {item!r} is not of the form name=value")
            try:
                params[key.strip()] = int(value)
            except ValueError:
                raise InvalidParameterError(f"parameter {key.strip()!r} needs an integer value, got {value!r}") from None
    return params


def builtin_catalog() -> List[CatalogEntry]:
    """The built-in catalog in a fixed order.

    Families contribute one instance at their default parameters; the fixed
    presentations and the name-only entries follow.
    """
    entries = [instantiate(name, **DEFAULT_PARAMS[name]) for name in FAMILIES]
    entries.append(
        CatalogEntry(
            "cubed-pair-link",
            parse_word(_join(3, _s(1, 3), _s(2, -1), _s(1, 3), _s(2, -1), _s(1), _s(2, -1))),
            "homflypt-families",
            expected_components=3,
        )
    )
    for name, first, second, sl in NG_PRESENTATIONS:
        for suffix, text in (("a", first), ("b", second)):
            entries.append(CatalogEntry(f"{name}/{suffix}", parse_word(text), "ng-presentations", expected_components=1, expected_self_linking=sl))
    for name in TRANSVERSE_STUDY:
        entries.append(CatalogEntry(name, None, "transverse-study"))
    for pair in HOMFLYPT_LINK_PAIRS:
        for name in pair:
            entries.append(CatalogEntry(name, None, "link-pairs"))
    return entries


def find(entries: Sequence[CatalogEntry], name: str) -> CatalogEntry:
    for entry in entries:
        if entry.name == name:
            return entry
    raise InvalidParameterError(f"no catalog entry named {name!r}")


# ----------------------------------------------------------------- ingestion


def parse_line(text: str, line: int, source: str) -> Optional[CatalogEntry]:
    """Parse one catalog line; blank lines and comments give None."""
    stripped = text.rstrip("\r\n")
    if not stripped.strip() or stripped.lstrip().startswith("#"):
        return None
    columns = stripped.split("\t")
    if len(columns) == 2:
        name, kind, word_text = columns[0], "classical", columns[1]
    elif len(columns) == 3:
        name, kind, word_text = columns
    else:
        raise CatalogError("expected 'name<TAB>word' or 'name<TAB>kind<TAB>word'", line)
    if kind not in WORD_KINDS:
        raise CatalogError(f"unknown word kind {kind!r}", line)
    if not word_text.strip():
        raise CatalogError("missing braid word", line)
    try:
        record = CatalogLine(name=name, word=word_text, kind=kind, source=source)
    except ValidationError as e:
        raise CatalogError(e.errors()[0]["msg"], line) from None
    try:
        word = parse_word(record.word, record.kind)
    except YKHError as e:
        raise CatalogError(e.message, line) from None
    return CatalogEntry(record.name, word, f"file:{record.source}")


def ingest_lines(lines: Sequence[str], source: str = "<memory>") -> List[CatalogEntry]:
    """Parse catalog lines, rejecting duplicate names."""
    entries: List[CatalogEntry] = []
    seen: Dict[str, int] = {}
    for number, text in enumerate(lines, start=1):
        entry = parse_line(text, number, source)
        if entry is None:
            continue
        if entry.name in seen:
            raise CatalogError(f"duplicate name {entry.name!r} (first defined on line {seen[entry.name]})", number)
        seen[entry.name] = number
        entries.append(entry)
    logger.debug("catalog ingested", source=source, entries=len(entries))
    return entries


def ingest(path: Union[str, Path]) -> List[CatalogEntry]:
    """Read a catalog file.

    Args:
        path (str | Path): File in the catalog line format.

    Returns:
        list[CatalogEntry]: Entries in file order.

    Raises:
        CatalogError: On an unreadable or non UTF-8 file, a malformed line
            (with its line number) or a duplicate name.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CatalogError(f"cannot read {path}: {e.strerror or e}") from None
    except UnicodeDecodeError as e:
        raise CatalogError(f"{path}: not valid UTF-8 (byte {e.object[e.start]:#04x} at offset {e.start})") from None
    return ingest_lines(text.splitlines(), str(path))
