"""Bundled datasets used by the golden tests and the CLI demos.

Seven documents ship with the package:

* ``example1_a1`` / ``example1_a2`` — one alternative each, rated by ten
  decision makers on a single criterion with weight 0.7.  The ratings are
  already normalized; the two panels share a mean rating of 0.5 but differ in
  spread, which is the whole point of the exergy indicator.
* ``example2_a1`` / ``example2_a2`` — the fuzzy twin of the pair: five
  decision makers, triangular ratings, weight (0.7, 0.8, 0.9).
* ``case1`` — a hiring panel: 17 candidates, 7 benefit criteria, 4 decision
  makers with numeric scores; includes the published extended-TOPSIS ranking
  for comparison.
* ``case2`` — a smaller hiring panel in linguistic form: 3 candidates,
  5 benefit criteria, 3 decision makers; includes the published fuzzy-TOPSIS
  ranking.
* ``case2_modified`` — ``case2`` after one decision maker's two ratings of
  candidate A2 are dropped to "very poor", the perturbation experiment.

``load_fixture`` returns a freshly built document each call, so callers can
mutate derived copies freely.
"""

from __future__ import annotations

from .config import CriterionSpec
from .errors import UnknownFixture
from .io_model import PanelDocument

__all__ = ["FIXTURE_NAMES", "load_fixture", "merge_documents"]

_W = 0.7  # shared criterion weight for the example1/example2 panels

_EXAMPLE1_RATINGS = {
    "A1": (0.50, 0.45, 0.40, 0.60, 0.45, 0.50, 0.50, 0.50, 0.55, 0.55),
    "A2": (0.20, 0.70, 0.30, 0.80, 0.10, 0.40, 0.70, 0.80, 0.30, 0.70),
}

_EXAMPLE2_RATINGS = {
    "A1": (
        (0.3, 0.4, 0.5),
        (0.3, 0.4, 0.5),
        (0.4, 0.5, 0.6),
        (0.5, 0.6, 0.7),
        (0.5, 0.6, 0.7),
    ),
    "A2": (
        (0.1, 0.2, 0.3),
        (0.2, 0.3, 0.4),
        (0.3, 0.4, 0.5),
        (0.7, 0.8, 0.9),
        (0.7, 0.8, 0.9),
    ),
}

# case1: five objective criteria scored once (shared by every DM) and two
# interview criteria scored per DM as (C6, C7) pairs for DM1..DM4.
_CASE1_OBJECTIVE = {
    "A1": (80, 70, 87, 77, 76),
    "A2": (85, 65, 76, 80, 75),
    "A3": (78, 90, 72, 80, 85),
    "A4": (75, 84, 69, 85, 65),
    "A5": (84, 67, 60, 75, 85),
    "A6": (85, 78, 82, 81, 79),
    "A7": (77, 83, 74, 70, 71),
    "A8": (78, 82, 72, 80, 78),
    "A9": (85, 90, 80, 88, 90),
    "A10": (89, 75, 79, 67, 77),
    "A11": (65, 55, 68, 62, 70),
    "A12": (70, 64, 65, 65, 60),
    "A13": (95, 80, 70, 75, 70),
    "A14": (70, 80, 79, 80, 85),
    "A15": (60, 78, 87, 70, 66),
    "A16": (92, 85, 88, 90, 85),
    "A17": (86, 87, 80, 70, 72),
}

_CASE1_INTERVIEWS = {
    "A1": ((80, 75), (85, 80), (75, 70), (90, 85)),
    "A2": ((65, 75), (60, 70), (70, 77), (60, 70)),
    "A3": ((90, 85), (80, 85), (80, 90), (90, 95)),
    "A4": ((65, 70), (55, 60), (68, 72), (62, 72)),
    "A5": ((75, 80), (75, 80), (50, 55), (70, 75)),
    "A6": ((80, 80), (75, 85), (77, 82), (75, 75)),
    "A7": ((65, 70), (70, 60), (65, 72), (67, 75)),
    "A8": ((70, 60), (75, 65), (75, 67), (82, 85)),
    "A9": ((80, 85), (95, 85), (90, 85), (90, 92)),
    "A10": ((70, 75), (75, 80), (68, 78), (65, 70)),
    "A11": ((50, 60), (62, 65), (60, 65), (65, 70)),
    "A12": ((60, 65), (65, 75), (50, 60), (45, 50)),
    "A13": ((75, 75), (80, 80), (65, 75), (70, 75)),
    "A14": ((80, 70), (75, 72), (80, 70), (75, 75)),
    "A15": ((70, 65), (75, 70), (65, 70), (60, 65)),
    "A16": ((90, 95), (92, 90), (85, 80), (88, 90)),
    "A17": ((80, 85), (70, 75), (75, 80), (70, 75)),
}

_CASE1_WEIGHTS = {
    "DM1": (0.066, 0.196, 0.066, 0.130, 0.130, 0.216, 0.196),
    "DM2": (0.042, 0.112, 0.082, 0.176, 0.118, 0.215, 0.255),
    "DM3": (0.060, 0.134, 0.051, 0.167, 0.100, 0.203, 0.285),
    "DM4": (0.047, 0.109, 0.037, 0.133, 0.081, 0.267, 0.326),
}

_CASE1_LITERATURE = {
    "extended_topsis": (5, 14, 3, 12, 11, 4, 13, 8, 2, 10, 16, 17, 9, 6, 15, 1, 7)
}

# case2 ratings per DM, rows A1..A3 over columns C1..C5
_CASE2_RATINGS = {
    "DM1": (
        ("MG", "G", "F", "VG", "F"),
        ("G", "VG", "VG", "VG", "VG"),
        ("VG", "MG", "G", "G", "G"),
    ),
    "DM2": (
        ("G", "MG", "G", "G", "F"),
        ("G", "VG", "VG", "VG", "MG"),
        ("G", "G", "MG", "VG", "G"),
    ),
    "DM3": (
        ("MG", "F", "G", "VG", "F"),
        ("MG", "VG", "G", "VG", "G"),
        ("F", "VG", "VG", "MG", "MG"),
    ),
}

_CASE2_WEIGHTS = {
    "DM1": ("H", "VH", "VH", "VH", "MH"),
    "DM2": ("VH", "VH", "H", "VH", "MH"),
    "DM3": ("MH", "VH", "H", "VH", "MH"),
}


def _single_alternative_example(name: str, alternative: str) -> PanelDocument:
    dms = tuple(f"DM{i}" for i in range(1, 11))
    ratings = _EXAMPLE1_RATINGS[alternative]
    return PanelDocument(
        name=name,
        mode="crisp",
        alternatives=(alternative,),
        criteria=(CriterionSpec("C1"),),
        decision_makers=dms,
        weights={dm: (_W,) for dm in dms},
        ratings={dm: ((ratings[k],),) for k, dm in enumerate(dms)},
        normalized=True,
    )


def _single_alternative_fuzzy(name: str, alternative: str) -> PanelDocument:
    dms = tuple(f"DM{i}" for i in range(1, 6))
    ratings = _EXAMPLE2_RATINGS[alternative]
    return PanelDocument(
        name=name,
        mode="fuzzy",
        alternatives=(alternative,),
        criteria=(CriterionSpec("C1"),),
        decision_makers=dms,
        weights={dm: ((0.7, 0.8, 0.9),) for dm in dms},
        ratings={dm: ((ratings[k],),) for k, dm in enumerate(dms)},
        normalized=True,
    )


def _case1() -> PanelDocument:
    alternatives = tuple(f"A{i}" for i in range(1, 18))
    dms = ("DM1", "DM2", "DM3", "DM4")
    ratings = {
        dm: tuple(
            _CASE1_OBJECTIVE[a] + _CASE1_INTERVIEWS[a][k] for a in alternatives
        )
        for k, dm in enumerate(dms)
    }
    return PanelDocument(
        name="case1",
        mode="crisp",
        alternatives=alternatives,
        criteria=tuple(CriterionSpec(f"C{j}") for j in range(1, 8)),
        decision_makers=dms,
        weights=_CASE1_WEIGHTS,
        ratings=ratings,
        literature=_CASE1_LITERATURE,
    )


def _case2(name: str = "case2") -> PanelDocument:
    return PanelDocument(
        name=name,
        mode="fuzzy",
        alternatives=("A1", "A2", "A3"),
        criteria=tuple(CriterionSpec(f"C{j}") for j in range(1, 6)),
        decision_makers=("DM1", "DM2", "DM3"),
        weights=_CASE2_WEIGHTS,
        ratings=_CASE2_RATINGS,
        literature={"fuzzy_topsis": (3, 1, 2)},
    )


def _case2_modified() -> PanelDocument:
    doc = _case2("case2_modified")
    doc = doc.replace_rating("DM1", "A2", "C1", "VP")
    doc = doc.replace_rating("DM1", "A2", "C2", "VP")
    return PanelDocument(
        name=doc.name,
        mode=doc.mode,
        alternatives=doc.alternatives,
        criteria=doc.criteria,
        decision_makers=doc.decision_makers,
        weights=doc.weights,
        ratings=doc.ratings,
        normalized=doc.normalized,
        literature={"fuzzy_topsis": (3, 2, 1)},
    )


_BUILDERS = {
    "example1_a1": lambda: _single_alternative_example("example1_a1", "A1"),
    "example1_a2": lambda: _single_alternative_example("example1_a2", "A2"),
    "example2_a1": lambda: _single_alternative_fuzzy("example2_a1", "A1"),
    "example2_a2": lambda: _single_alternative_fuzzy("example2_a2", "A2"),
    "case1": _case1,
    "case2": _case2,
    "case2_modified": _case2_modified,
}

FIXTURE_NAMES: tuple[str, ...] = tuple(_BUILDERS)


def load_fixture(name: str) -> PanelDocument:
    """Return one of the bundled documents by name; see FIXTURE_NAMES."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}"
        ) from None
    return builder()


def merge_documents(*docs: PanelDocument, name: str | None = None) -> PanelDocument:
    """Stack single-alternative documents into one multi-alternative panel.

    The documents must agree on mode, criteria, decision makers, weights, and
    the normalized flag; alternatives must not repeat.  Published rankings are
    dropped — they do not transfer to a recombined panel.
    """
    if len(docs) < 2:
        raise ValueError("need at least two documents to merge")
    first = docs[0]
    for doc in docs[1:]:
        if (
            doc.mode != first.mode
            or doc.criteria != first.criteria
            or doc.decision_makers != first.decision_makers
            or doc.weights != first.weights
            or doc.normalized != first.normalized
        ):
            raise ValueError(f"document {doc.name!r} is not compatible with {first.name!r}")
    alternatives = [a for doc in docs for a in doc.alternatives]
    ratings = {
        dm: tuple(row for doc in docs for row in doc.ratings[dm])
        for dm in first.decision_makers
    }
    return PanelDocument(
        name=name or "+".join(doc.name for doc in docs),
        mode=first.mode,
        alternatives=alternatives,
        criteria=first.criteria,
        decision_makers=first.decision_makers,
        weights=first.weights,
        ratings=ratings,
        normalized=first.normalized,
        rating_scale=first.rating_scale,
        weight_scale=first.weight_scale,
    )
