"""Score banding, claim adjudication, and output encoding.

A similarity score in [0, 1] lands in one of three bands: at or above the
upper threshold p it reads as I (identical), at or below the lower threshold
n as D (different), strictly between as O (no decision). A claim of identity
is then accepted, rejected, or bounced for a repeat attempt, depending on
the band and on whether the claim was positive ("I am X") or negative
("I am not X").

Each modal value also has a fixed output row: a response code in 0..7, its
binary form, and a label describing how the two claim polarities fare. The
row for O, for example, means both a positive and a negative claim would be
told to try again.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .octal_algebra import (
    MODAL_D,
    MODAL_I,
    MODAL_O,
    BitTriple,
    ModalString,
    Octal,
    octal_to_bits,
)


class Polarity(enum.Enum):
    """Direction of an identity claim."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


class Response(enum.Enum):
    """System answer to a claim."""

    ACCEPTED = "accepted"
    REJECTED = "rejected"
    REPEAT = "repeat"


@dataclass(frozen=True)
class ScoreBands:
    """Decision thresholds: reject at or below n, accept at or above p.

    target_rate records the error rate both thresholds were calibrated to
    and rides along for audit purposes.
    """

    n: float
    p: float
    target_rate: float = 1e-10

    def __post_init__(self) -> None:
        if not 0.0 <= self.n < self.p <= 1.0:
            raise ValueError(
                f"thresholds must satisfy 0 <= n < p <= 1, got "
                f"n={self.n!r} p={self.p!r}")
        if not 0.0 < self.target_rate < 1.0:
            raise ValueError(f"target_rate must be in (0, 1), got "
                             f"{self.target_rate!r}")


#: published reference operating point for iris codes
DEFAULT_BANDS = ScoreBands(n=0.3725, p=0.55, target_rate=1e-10)


@dataclass(frozen=True)
class Claim:
    polarity: Polarity
    claimed_identity: str


@dataclass(frozen=True)
class DecisionRecord:
    """Everything about one adjudicated comparison, for audit logs."""

    claim: Claim
    score: float
    modal: ModalString
    response: Response
    output_octal: Octal
    output_meaning: str

    def to_record(self) -> str:
        """Single-line key=value form."""
        return " ".join([
            f"claim={self.claim.polarity.value}",
            f"identity={self.claim.claimed_identity}",
            f"score={float(self.score)!r}",
            f"modal={self.modal}",
            f"response={self.response.value}",
            f"output_octal={int(self.output_octal)}",
            f"meaning={self.output_meaning}",
        ])


def classify(score: float, bands: ScoreBands) -> ModalString:
    """Band membership of a score; the outer bands are closed.

    Returns the atomic modal value I (score >= p), D (score <= n) or O.
    """
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"score must be in [0, 1], got {score!r}")
    if score >= bands.p:
        return MODAL_I
    if score <= bands.n:
        return MODAL_D
    return MODAL_O


_POSITIVE = {MODAL_I: Response.ACCEPTED, MODAL_O: Response.REPEAT,
             MODAL_D: Response.REJECTED}
_NEGATIVE = {MODAL_I: Response.REJECTED, MODAL_O: Response.REPEAT,
             MODAL_D: Response.ACCEPTED}


def decide(claim: Claim, score: float, bands: ScoreBands) -> DecisionRecord:
    """Adjudicate one claim against one score.

    A positive claim is accepted on I and rejected on D; a negative claim
    the other way around; O always means try again.
    """
    modal = classify(score, bands)
    table = _POSITIVE if claim.polarity is Polarity.POSITIVE else _NEGATIVE
    out_octal, _, meaning = output_encoding(modal)
    return DecisionRecord(claim=claim, score=float(score), modal=modal,
                          response=table[modal], output_octal=out_octal,
                          output_meaning=meaning)


# fixed output rows keyed by the modal value's integer code; the meaning
# label spells out the fate of a positive (P) and negative (N) claim,
# A'ccepted or R'ejected
_OUTPUT_ROWS: dict[int, tuple[int, str]] = {
    7: (7, "PR' NR'"),
    3: (6, "PR' NA'"),
    6: (5, "PA' NR'"),
    5: (4, "PA' NA'"),
    2: (3, "PR'&NR'"),
    1: (2, "PR'&NA'"),
    4: (1, "PA'&NR'"),
    0: (0, "PA'&NA'"),
}


def output_encoding(modal: "str | ModalString") -> tuple[Octal, BitTriple, str]:
    """Output row for a modal value: response code, its bits, meaning label."""
    code = _OUTPUT_ROWS[int(psi(modal))]
    return Octal(code[0]), octal_to_bits(code[0]), code[1]


# the defuzzification bijection from modal values to integer codes
_PSI: dict[str, int] = {
    "E": 0, "D": 1, "O": 2, "I": 4, "OD": 3, "ID": 5, "IO": 6, "IOD": 7,
}


def psi(m: "str | ModalString") -> Octal:
    """Integer code of a modal value under the fixed correspondence
    E,D,O,I,OD,ID,IO,IOD -> 0,1,2,4,3,5,6,7."""
    return Octal(_PSI[str(ModalString(m))])


#: crisp value of an undecidable outcome
UNDECIDABLE = None


def defuzzify(modal: "str | ModalString") -> int | None:
    """Crisp bit for an atomic outcome: 1 for I, 0 for D, UNDECIDABLE for O."""
    m = ModalString(modal)
    if m == MODAL_I:
        return 1
    if m == MODAL_D:
        return 0
    if m == MODAL_O:
        return UNDECIDABLE
    raise ValueError(f"not an atomic outcome: {m}")
