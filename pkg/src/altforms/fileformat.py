"""The ``.alt`` text format for alternating forms.

::

    field gf 2            # or: field q
    dim 7
    degree 3
    +1 1 2 4              # <coeff> <i1> ... <ie>, 1-based, strictly increasing
    ...

Coefficients are integers or ``a/b`` rationals with an optional sign.  Terms
with the same index set are summed and zero terms dropped.  Blank lines and
``#`` comments are ignored.  :func:`serialize_form` writes the canonical form:
terms in lexicographic index order, coefficients with an explicit sign
(GF(p) values as their representative in [1, p)).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .errors import ParseError
from .exterior import FormVector, mask_of
from .forms import AltForm
from .rings import GF, QQ, FieldSpec, is_prime, render_scalar

_COEFF = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_field(text: str) -> FieldSpec:
    """``q``, ``gf 7``, ``gf7``, ``gf:7`` or just ``7``."""
    t = text.strip().lower().replace(":", " ")
    if t in ("q", "qq"):
        return QQ
    m = re.fullmatch(r"(?:gf\s*)?(\d+)", t)
    if not m:
        raise ParseError(f"unrecognised field {text!r}")
    p = int(m.group(1))
    if not is_prime(p) or p >= 2**31:
        raise ParseError(f"modulus {p} is not a prime below 2^31")
    return GF(p)


def _tokens(line: str):
    """Whitespace-separated tokens with their 1-based columns."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _header(lines, pos, keyword):
    if pos >= len(lines):
        raise ParseError(f"missing '{keyword}' line")
    lineno, toks = lines[pos]
    if toks[0][0] != keyword:
        raise ParseError(f"expected '{keyword}'", lineno, toks[0][1])
    return lineno, toks, pos + 1


def _int_token(tok, lineno, what):
    text, col = tok
    if not text.isdigit():
        raise ParseError(f"{what} must be a non-negative integer, got {text!r}", lineno, col)
    return int(text)


def parse_formvector(text: str, field: Optional[FieldSpec] = None) -> FormVector:
    """Parse ``.alt`` text into a FormVector of any degree.

    ``field`` overrides the header's field; coefficients are then read as
    rationals and mapped into it.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = _tokens(body)
        if toks:
            lines.append((lineno, toks))

    lineno, toks, pos = _header(lines, 0, "field")
    spec = " ".join(t for t, _ in toks[1:])
    if not spec:
        raise ParseError("field line needs 'q' or 'gf <p>'", lineno, toks[0][1])
    try:
        header_field = parse_field(spec)
    except ParseError as exc:
        raise ParseError(str(exc), lineno, toks[1][1]) from None
    F = field or header_field

    lineno, toks, pos = _header(lines, pos, "dim")
    if len(toks) != 2:
        raise ParseError("expected 'dim <n>'", lineno, toks[0][1])
    n = _int_token(toks[1], lineno, "dim")
    if n > 24:
        raise ParseError("dim must be at most 24", lineno, toks[1][1])

    lineno, toks, pos = _header(lines, pos, "degree")
    if len(toks) != 2:
        raise ParseError("expected 'degree <e>'", lineno, toks[0][1])
    e = _int_token(toks[1], lineno, "degree")
    if e > n:
        raise ParseError(f"degree {e} exceeds dim {n}", lineno, toks[1][1])

    acc: dict = {}
    for lineno, toks in lines[pos:]:
        ctext, ccol = toks[0]
        if not _COEFF.match(ctext):
            raise ParseError(f"bad coefficient {ctext!r}", lineno, ccol)
        num = Fraction(ctext)
        if len(toks) != e + 1:
            raise ParseError(f"expected {e} indices, got {len(toks) - 1}", lineno, ccol)
        idx = []
        for tok in toks[1:]:
            i = _int_token(tok, lineno, "index")
            if not 1 <= i <= n:
                raise ParseError(f"index {i} out of range 1..{n}", lineno, tok[1])
            if idx and i <= idx[-1]:
                raise ParseError("indices must be strictly increasing", lineno, tok[1])
            idx.append(i)
        try:
            c = F(num)
        except ZeroDivisionError:
            raise ParseError(f"coefficient {ctext} is undefined in {F}", lineno, ccol) from None
        m = mask_of(i - 1 for i in idx)
        acc[m] = acc[m] + c if m in acc else c
    return FormVector(n, e, F, acc)


def parse_form(text: str, field: Optional[FieldSpec] = None) -> AltForm:
    v = parse_formvector(text, field)
    if v.grade < 2:
        raise ParseError(f"an alternating form needs degree >= 2, got {v.grade}")
    return AltForm(v)


def _signed(c) -> str:
    s = render_scalar(c)
    return s if s.startswith("-") else "+" + s


def serialize_form(omega) -> str:
    if isinstance(omega, AltForm):
        omega = omega.omega
    F = omega.ring
    head = "field q" if F.kind == "q" else f"field gf {F.p}"
    out = [head, f"dim {omega.n}", f"degree {omega.grade}"]
    for idx, c in omega.items():
        out.append(" ".join([_signed(c)] + [str(i + 1) for i in idx]))
    return "\n".join(out) + "\n"
