"""Certificates and their exact verification.

Three kinds of certificate share one JSON format (``kind`` = "sos", "diff"
or "psd").  Every check here is exact: there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from . import linalg
from .errors import DomainMismatch, IdentityInvalid, NotPSDInput, NotSymmetric
from .numberfield import FieldElement, NumberField, embedding_signs, make_field
from .polyring import SparsePoly
from .squares import four_square_decompose


def _q(x) -> str:
    return str(Fraction(x))


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


# --- sums of squares -------------------------------------------------------------

@dataclass(frozen=True)
class SOSCertificate:
    """Claim: target = sum of weight * form**2."""

    target: SparsePoly
    summands: tuple[tuple[Fraction, SparsePoly], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "summands", tuple((Fraction(w), p) for w, p in self.summands)
        )

    @property
    def domain(self) -> NumberField | None:
        return self.target.domain

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.summands)

    @property
    def forms(self) -> tuple[SparsePoly, ...]:
        return tuple(p for _, p in self.summands)

    def __len__(self):
        return len(self.summands)

    def expand(self) -> SparsePoly:
        total = SparsePoly.zero(self.target.nvars, self.domain)
        for w, p in self.summands:
            total = total + p * p * w
        return total

    def __eq__(self, other):
        return (
            isinstance(other, SOSCertificate)
            and self.target == other.target
            and self.summands == other.summands
        )

    def __hash__(self):
        return hash((self.target, self.summands))

    def to_json(self) -> dict:
        return {
            "kind": "sos",
            "target": self.target.to_json(),
            "summands": [{"w": _q(w), "form": p.to_json()} for w, p in self.summands],
        }

    @staticmethod
    def from_json(data: Mapping) -> "SOSCertificate":
        _expect_kind(data, "sos")
        target = SparsePoly.from_json(data["target"])
        summands = [(Fraction(s["w"]), SparsePoly.from_json(s["form"])) for s in data["summands"]]
        return SOSCertificate(target, tuple(summands))


def _check_domains(cert: SOSCertificate) -> None:
    for _, p in cert.summands:
        if p.domain != cert.domain or p.nvars != cert.target.nvars:
            raise DomainMismatch(
                f"summand over {p.domain!r} in {p.nvars} variables does not match "
                f"target over {cert.domain!r} in {cert.target.nvars} variables"
            )


def verify_sos(cert: SOSCertificate) -> bool:
    """True iff all weights are >= 0 and the weighted squares expand to the target."""
    _check_domains(cert)
    if any(w < 0 for w in cert.weights):
        return False
    return cert.expand() == cert.target


def to_pure(cert: SOSCertificate) -> SOSCertificate:
    """Equivalent certificate with every weight equal to 1.

    Square weights are folded into their form; any other weight c is
    written as a sum of four rational squares and distributed over copies
    of the form.
    """
    out = []
    for w, p in cert.summands:
        if w == 0 or p.is_zero():
            continue
        root = rational_sqrt(w)
        if root is not None:
            out.append((Fraction(1), p * root))
            continue
        for part in four_square_decompose(w).parts:
            if part:
                out.append((Fraction(1), p * part))
    return SOSCertificate(cert.target, tuple(out))


# --- differences of squares ----------------------------------------------------------

@dataclass(frozen=True)
class DiffOfSquaresWitness:
    """Claim: scale * target = A**2 - lam * B**2 over ``field``."""

    field: NumberField
    target: SparsePoly
    A: SparsePoly
    B: SparsePoly
    lam: FieldElement
    scale: Fraction = Fraction(1)

    def residual(self) -> SparsePoly:
        K = self.field
        return self.target.over(K) * Fraction(self.scale) - self.A * self.A + self.B * self.B * self.lam

    def to_json(self) -> dict:
        return {
            "kind": "diff",
            "field": self.field.to_json(),
            "target": self.target.to_json(),
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "lambda": self.lam.to_json(),
            "scale": _q(self.scale),
        }

    @staticmethod
    def from_json(data: Mapping) -> "DiffOfSquaresWitness":
        _expect_kind(data, "diff")
        K = make_field([int(c) for c in data["field"]])
        lam = FieldElement(K, tuple(Fraction(c) for c in data["lambda"]))
        return DiffOfSquaresWitness(
            K,
            SparsePoly.from_json(data["target"]),
            SparsePoly.from_json(data["A"]),
            SparsePoly.from_json(data["B"]),
            lam,
            Fraction(data["scale"]),
        )


def verify_diff_identity(w: DiffOfSquaresWitness) -> bool:
    try:
        return w.residual().is_zero()
    except DomainMismatch:
        return False


@dataclass(frozen=True)
class RealSOSEvidence:
    """Signs of lambda at the real embeddings, in increasing root order."""

    signs: tuple[int, ...]
    negative_embeddings: tuple[int, ...]  # 1-based

    @property
    def sos_over_reals(self) -> bool:
        return bool(self.negative_embeddings)

    @property
    def conclusion(self) -> str | None:
        if not self.negative_embeddings:
            return None
        idx = ", ".join(str(i) for i in self.negative_embeddings)
        return f"sum of two squares over R via embeddings {idx}"

    def to_json(self) -> dict:
        return {
            "signs": list(self.signs),
            "negative_embeddings": list(self.negative_embeddings),
            "conclusion": self.conclusion,
        }


def sos_over_R_evidence(w: DiffOfSquaresWitness) -> RealSOSEvidence:
    """At an embedding where lam < 0, A**2 - lam*B**2 is a sum of two real squares."""
    if not verify_diff_identity(w):
        raise IdentityInvalid("scale*target != A^2 - lambda*B^2")
    signs = tuple(embedding_signs(w.lam))
    neg = tuple(i + 1 for i, s in enumerate(signs) if s < 0)
    return RealSOSEvidence(signs, neg)


# --- PSD checks ----------------------------------------------------------------------

@dataclass(frozen=True)
class PSDReport:
    matrix: tuple[tuple[Fraction, ...], ...]
    verdict: str  # "PSD" or "NotPSD"
    transform: tuple[tuple[Fraction, ...], ...] | None = None
    diagonal: tuple[Fraction, ...] | None = None
    witness: tuple[Fraction, ...] | None = None

    @property
    def is_psd(self) -> bool:
        return self.verdict == "PSD"

    def recheck(self) -> bool:
        """Re-derive the verdict from the stored evidence alone."""
        m = [list(r) for r in self.matrix]
        if self.verdict == "NotPSD":
            return self.witness is not None and linalg.quadratic_value(m, self.witness) < 0
        if self.transform is None or self.diagonal is None:
            return False
        b = [list(r) for r in self.transform]
        if linalg.det(b) == 0 or any(x < 0 for x in self.diagonal):
            return False
        prod = linalg.matmul(linalg.matmul(linalg.transpose(b), m), b)
        n = len(m)
        return all(
            prod[i][j] == (self.diagonal[i] if i == j else 0) for i in range(n) for j in range(n)
        )

    def to_json(self) -> dict:
        enc = lambda rows: None if rows is None else [[_q(x) for x in r] for r in rows]
        return {
            "kind": "psd",
            "matrix": enc(self.matrix),
            "verdict": self.verdict,
            "transform": enc(self.transform),
            "diagonal": None if self.diagonal is None else [_q(x) for x in self.diagonal],
            "witness": None if self.witness is None else [_q(x) for x in self.witness],
        }

    @staticmethod
    def from_json(data: Mapping) -> "PSDReport":
        _expect_kind(data, "psd")
        dec = lambda rows: None if rows is None else tuple(tuple(Fraction(x) for x in r) for r in rows)
        vec = lambda v: None if v is None else tuple(Fraction(x) for x in v)
        return PSDReport(
            dec(data["matrix"]),
            data["verdict"],
            dec(data.get("transform")),
            vec(data.get("diagonal")),
            vec(data.get("witness")),
        )


def _small_witness(m: linalg.Matrix) -> list[Fraction] | None:
    n = len(m)
    for i in range(n):
        if m[i][i] < 0:
            return [Fraction(int(k == i)) for k in range(n)]
    for sgn in (-1, 1):
        for i in range(n):
            for j in range(i + 1, n):
                v = [Fraction(0)] * n
                v[i], v[j] = Fraction(1), Fraction(sgn)
                if linalg.quadratic_value(m, v) < 0:
                    return v
    return None


def psd_check(M: Sequence[Sequence]) -> PSDReport:
    m = linalg.to_matrix(M)
    if not linalg.is_symmetric(m):
        raise NotSymmetric("matrix is not symmetric")
    frozen = tuple(tuple(r) for r in m)
    b, diag = linalg.congruence_diagonalize(m)
    neg = [k for k, x in enumerate(diag) if x < 0]
    if not neg:
        return PSDReport(frozen, "PSD", tuple(tuple(r) for r in b), tuple(diag))
    v = _small_witness(m) or [b[i][neg[0]] for i in range(len(m))]
    return PSDReport(frozen, "NotPSD", witness=tuple(v))


def gram_matrix(h: SparsePoly) -> linalg.Matrix:
    """Symmetric M with h(x) = x^T M x for a rational quadratic form h."""
    if h.domain is not None:
        raise DomainMismatch("gram_matrix expects a rational form")
    if not h.is_zero() and (h.degree() != 2 or not h.is_homogeneous()):
        raise ValueError("expected a homogeneous quadratic form")
    n = h.nvars
    m = [[Fraction(0)] * n for _ in range(n)]
    for e, c in h.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            m[i][i] += c
        else:
            m[i][j] += c / 2
            m[j][i] += c / 2
    return m


def quadratic_to_sos(h: SparsePoly) -> SOSCertificate:
    """Weighted squares of rational linear forms summing to h.

    From B^T M B = D we get M = B^-T D B^-1, so h = sum D_k (row_k(B^-1) x)^2.
    """
    report = psd_check(gram_matrix(h))
    if not report.is_psd:
        raise NotPSDInput(f"form is negative at {list(map(str, report.witness))}")
    binv = linalg.inverse([list(r) for r in report.transform])
    summands = []
    for k, dk in enumerate(report.diagonal):
        if dk:
            summands.append((dk, SparsePoly.linear(binv[k])))
    return SOSCertificate(h, tuple(summands))


# --- generic (de)serialization ------------------------------------------------------

def _expect_kind(data: Mapping, kind: str) -> None:
    if data.get("kind") != kind:
        raise ValueError(f"expected a {kind!r} document, got {data.get('kind')!r}")


CERTIFICATE_KINDS = {
    "sos": SOSCertificate,
    "diff": DiffOfSquaresWitness,
    "psd": PSDReport,
}


def certificate_from_json(data: Mapping):
    try:
        cls = CERTIFICATE_KINDS[data["kind"]]
    except KeyError:
        raise ValueError(f"unknown certificate kind {data.get('kind')!r}") from None
    return cls.from_json(data)
