"""q-expansions of the six level-one cuspidal eigenforms with rational
integer coefficients (weights 12, 16, 18, 20, 22, 26).

The weight-12 series is built from the cube of the Dedekind eta sparse
expansion, raised to the eighth power by repeated sparse-by-dense
multiplication.  Higher weights are the weight-12 series times monomials
in the Eisenstein series E4, E6.  A second, independent route
(E4**3 - E6**2)/1728 exists purely as a cross-check oracle.

Prime-power coefficients follow the standard three-term Hecke recurrence,
and general coefficients extend multiplicatively.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass, field

from gmpy2 import mpz

__all__ = [
    "FormDescriptor",
    "FORMS",
    "CoefficientTable",
    "TableFormatError",
    "TableChecksumError",
    "TableMismatchError",
    "eta_power_series",
    "delta_series",
    "eisenstein_series",
    "series_mul",
    "delta_series_eisenstein_oracle",
    "eigenform_table",
    "coeff_prime_power",
    "coeff_at",
    "save_table",
    "load_table",
]

# All six forms have rational integer coefficients: the coefficient field
# is Q and its degree is 1.  Analysis formulas take the degree from here.
COEFFICIENT_FIELD_DEGREE = 1


@dataclass(frozen=True)
class FormDescriptor:
    """A normalized cuspidal eigenform of full level, named by weight."""

    name: str
    weight: int
    level: int = 1
    # exponents (a, b) in delta * E4**a * E6**b
    e4_power: int = 0
    e6_power: int = 0


FORMS: dict[str, FormDescriptor] = {
    f.name: f
    for f in (
        FormDescriptor("delta", 12),
        FormDescriptor("weight16", 16, e4_power=1),
        FormDescriptor("weight18", 18, e6_power=1),
        FormDescriptor("weight20", 20, e4_power=2),
        FormDescriptor("weight22", 22, e4_power=1, e6_power=1),
        FormDescriptor("weight26", 26, e4_power=2, e6_power=1),
    )
}
FORMS["weight12"] = FORMS["delta"]


def form_by_name(name: str) -> FormDescriptor:
    try:
        return FORMS[name]
    except KeyError:
        raise ValueError(
            f"unsupported form {name!r}; choose from {sorted(set(f.name for f in FORMS.values()))}"
        ) from None


def form_by_weight(weight: int) -> FormDescriptor:
    for f in FORMS.values():
        if f.weight == weight:
            return f
    raise ValueError(f"unsupported weight {weight}; the space has dimension 1 only for 12, 16, 18, 20, 22, 26")


class TableFormatError(ValueError):
    """Header or row of a coefficient cache file is malformed."""


class TableChecksumError(TableFormatError):
    """Stored body digest does not match the file contents."""


class TableMismatchError(TableFormatError):
    """File is valid but describes a different form or range."""


# ---------------------------------------------------------------------------
# series construction
# ---------------------------------------------------------------------------


def eta_power_series(limit: int, variant: str = "eta") -> list[int]:
    """Coefficients 0..limit of prod (1-q^n) ("eta") or its cube ("eta3").

    Both expansions are sparse: pentagonal-number exponents for eta and
    triangular exponents with odd weights for the cube.

    >>> eta_power_series(5)
    [1, -1, -1, 0, 0, 1]
    >>> eta_power_series(6, "eta3")
    [1, -3, 0, 5, 0, 0, -7]
    """
    if limit < 0:
        raise ValueError("series limit must be nonnegative")
    out = [0] * (limit + 1)
    for exp, c in _eta_sparse_terms(limit, variant):
        out[exp] += c
    return out


def _eta_sparse_terms(limit: int, variant: str) -> list[tuple[int, int]]:
    terms: list[tuple[int, int]] = []
    if variant == "eta":
        j = 0
        while True:
            done = True
            for jj in ((j,) if j == 0 else (j, -j)):
                exp = jj * (3 * jj - 1) // 2
                if exp <= limit:
                    terms.append((exp, (-1) ** (jj % 2)))
                    done = False
            if done:
                break
            j += 1
    elif variant == "eta3":
        j = 0
        while j * (j + 1) // 2 <= limit:
            terms.append((j * (j + 1) // 2, (-1) ** (j % 2) * (2 * j + 1)))
            j += 1
    else:
        raise ValueError(f"unknown eta variant {variant!r}")
    terms.sort()
    return terms


def _sparse_mul(dense: list[int], sparse: list[tuple[int, int]], limit: int) -> list[int]:
    """Truncated product of a dense coefficient list with a sparse one."""
    out = [0] * (limit + 1)
    for off, c in sparse:
        if off > limit:
            break
        tail = limit + 1 - off
        seg = dense[:tail]
        if c == 1:
            out[off:] = [x + y for x, y in zip(out[off:], seg)]
        elif c == -1:
            out[off:] = [x - y for x, y in zip(out[off:], seg)]
        else:
            out[off:] = [x + c * y for x, y in zip(out[off:], seg)]
    return out


def delta_series(limit: int) -> list[int]:
    """Weight-12 coefficients a(1..limit) as a list indexed by n (index 0 unused).

    q * (eta^3)^8: the cube's sqrt(2*limit)-term expansion is folded into a
    dense accumulator eight times, so the cost is O(limit^1.5) big-integer
    additions and no large multiplications.

    >>> delta_series(6)[1:]
    [1, -24, 252, -1472, 4830, -6048]
    """
    if limit < 1:
        raise ValueError("delta series needs limit >= 1")
    inner = limit - 1  # shift by one power of q
    sparse = _eta_sparse_terms(inner, "eta3")
    acc = eta_power_series(inner, "eta3")
    for _ in range(7):
        acc = _sparse_mul(acc, sparse, inner)
    return [0] + acc


def eisenstein_series(weight: int, limit: int) -> list[int]:
    """Normalized E4 or E6 coefficients 0..limit (constant term 1).

    >>> eisenstein_series(4, 2)
    [1, 240, 2160]
    """
    if weight not in (4, 6):
        raise ValueError("only E4 and E6 are needed here")
    if limit < 0:
        raise ValueError("series limit must be nonnegative")
    k = weight - 1
    scale = 240 if weight == 4 else -504
    sig = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dk = d**k
        for m in range(d, limit + 1, d):
            sig[m] += dk
    out = [scale * s for s in sig]
    out[0] = 1
    return out


def series_mul(a: list[int], b: list[int], limit: int) -> list[int]:
    """Truncated product of two dense integer series.

    Kronecker substitution: each operand is split into positive and
    negative parts, packed into one huge integer with fixed-width digits,
    and multiplied with GMP; the four nonnegative products are unpacked
    and recombined.  Exact for arbitrary signed integer coefficients.
    """
    a = a[: limit + 1]
    b = b[: limit + 1]
    if not a or not b:
        return [0] * (limit + 1)
    max_a = max(max(a), -min(a), 1)
    max_b = max(max(b), -min(b), 1)
    # digit width must hold sum of min(len) products of the two maxima
    bits = max_a.bit_length() + max_b.bit_length() + (min(len(a), len(b))).bit_length() + 1
    width = (bits + 7) // 8

    def halves(coeffs):
        pos = [c if c > 0 else 0 for c in coeffs]
        neg = [-c if c < 0 else 0 for c in coeffs]
        return pos, neg

    full_digits = len(a) + len(b) + 1

    def pack(coeffs):
        return mpz(int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little"))

    def unpack(val, count):
        data = int(val).to_bytes(width * full_digits, "little")
        return [int.from_bytes(data[i * width : (i + 1) * width], "little") for i in range(count)]

    ap, an = halves(a)
    bp, bn = halves(b)
    n_out = limit + 1
    buf_len = len(a) + len(b)
    pp = unpack(pack(ap) * pack(bp), min(n_out, buf_len))
    nn = unpack(pack(an) * pack(bn), min(n_out, buf_len))
    pn = unpack(pack(ap) * pack(bn), min(n_out, buf_len))
    np_ = unpack(pack(an) * pack(bp), min(n_out, buf_len))
    out = [pp[i] + nn[i] - pn[i] - np_[i] for i in range(min(n_out, buf_len))]
    out += [0] * (n_out - len(out))
    return out


def delta_series_eisenstein_oracle(limit: int) -> list[int]:
    """Independent weight-12 route: (E4^3 - E6^2)/1728, exact division."""
    e4 = eisenstein_series(4, limit)
    e6 = eisenstein_series(6, limit)
    e4_3 = series_mul(series_mul(e4, e4, limit), e4, limit)
    e6_2 = series_mul(e6, e6, limit)
    out = []
    for i in range(limit + 1):
        num = e4_3[i] - e6_2[i]
        if num % 1728:
            raise ArithmeticError(f"1728 does not divide coefficient {i}")
        out.append(num // 1728)
    return out


# ---------------------------------------------------------------------------
# coefficient tables
# ---------------------------------------------------------------------------


@dataclass
class CoefficientTable:
    """Exact coefficients a(1..limit) of one eigenform; index 0 is unused."""

    form: FormDescriptor
    limit: int
    coeffs: list[int] = field(repr=False)

    def a(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise LookupError(f"n = {n} outside table range [1, {self.limit}]")
        return self.coeffs[n]


_table_cache: dict[tuple[str, int], CoefficientTable] = {}


def eigenform_table(form: FormDescriptor | str, limit: int) -> CoefficientTable:
    """Build (or fetch from the in-process cache) a coefficient table.

    >>> eigenform_table("weight16", 2).a(2)
    216
    """
    if isinstance(form, str):
        form = form_by_name(form)
    if limit < 1:
        raise ValueError("table limit must be >= 1")
    key = (form.name, limit)
    hit = _table_cache.get(key)
    if hit is not None:
        return hit
    # reuse a longer table if one is already cached
    donor = None
    for (name, lim), tab in _table_cache.items():
        if name == form.name and lim >= limit:
            donor = tab
            break
    if donor is not None:
        sliced = CoefficientTable(form, limit, donor.coeffs[: limit + 1])
        _table_cache[key] = sliced
        return sliced
    series = delta_series(limit)
    for _ in range(form.e4_power):
        series = series_mul(series, eisenstein_series(4, limit), limit)
    for _ in range(form.e6_power):
        series = series_mul(series, eisenstein_series(6, limit), limit)
    if series[1] != 1:
        raise AssertionError("eigenform normalization a(1) = 1 violated")
    table = CoefficientTable(form, limit, series)
    _table_cache[key] = table
    return table


def coeff_prime_power(table: CoefficientTable, p: int, m: int) -> int:
    """a(p^m) by the three-term recurrence seeded from the table.

    a(p^(m+1)) = a(p) a(p^m) - p^(k-1) a(p^(m-1)); only a(p) is read
    from the table, so p may exceed limit**m freely as long as p itself
    is covered.

    >>> t = eigenform_table("delta", 10)
    >>> coeff_prime_power(t, 2, 2)
    -1472
    """
    from .arith import is_prime

    if m < 0:
        raise ValueError("prime-power exponent must be >= 0")
    if p > table.limit:
        raise LookupError(f"a({p}) not in table (limit {table.limit})")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m == 0:
        return 1
    ap = table.a(p)
    if m == 1:
        return ap
    qk = p ** (table.form.weight - 1)
    prev, cur = 1, ap
    for _ in range(m - 1):
        prev, cur = cur, ap * cur - qk * prev
    return cur


def coeff_at(table: CoefficientTable, n: int) -> int:
    """a(n) for arbitrary n >= 1, assembled multiplicatively.

    Every prime factor of n must lie within the table limit; n itself may
    exceed it.
    """
    from .arith import factorize

    if n < 1:
        raise ValueError("coefficient index must be >= 1")
    if n <= table.limit:
        return table.a(n)
    out = 1
    for p, e in factorize(n).factors:
        out *= coeff_prime_power(table, p, e)
    return out


# ---------------------------------------------------------------------------
# disk cache
# ---------------------------------------------------------------------------

_HEADER_RE = re.compile(
    r"^#eigenform-table v(?P<version>\d+) weight=(?P<weight>\d+) level=(?P<level>\d+) "
    r"limit=(?P<limit>\d+) sha256=(?P<digest>[0-9a-f]{64})$"
)
_FORMAT_VERSION = 1


def _table_body(table: CoefficientTable) -> bytes:
    lines = [f"{n},{table.coeffs[n]}\n" for n in range(1, table.limit + 1)]
    return "".join(lines).encode("ascii")


def save_table(table: CoefficientTable, path) -> None:
    """Write the cache file: one header line with a body digest, then n,a(n) rows."""
    body = _table_body(table)
    digest = hashlib.sha256(body).hexdigest()
    header = (
        f"#eigenform-table v{_FORMAT_VERSION} weight={table.form.weight} "
        f"level={table.form.level} limit={table.limit} sha256={digest}\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(body)


def load_table(path, form: FormDescriptor | None = None, limit: int | None = None) -> CoefficientTable:
    """Load and fully validate a cache file.

    Raises TableChecksumError on a digest mismatch, TableMismatchError when
    the file does not match the requested form/limit, TableFormatError on
    anything structurally wrong.
    """
    with open(path, "rb") as fh:
        header_line = fh.readline().decode("ascii", errors="replace").rstrip("\n")
        body = fh.read()
    m = _HEADER_RE.match(header_line)
    if not m:
        raise TableFormatError(f"unrecognized table header: {header_line[:80]!r}")
    if int(m["version"]) != _FORMAT_VERSION:
        raise TableFormatError(f"unsupported table format version v{m['version']}")
    digest = hashlib.sha256(body).hexdigest()
    if digest != m["digest"]:
        raise TableChecksumError(f"table body digest mismatch in {path}")
    weight, level, file_limit = int(m["weight"]), int(m["level"]), int(m["limit"])
    try:
        descriptor = form_by_weight(weight)
    except ValueError as exc:
        raise TableMismatchError(str(exc)) from None
    if level != descriptor.level:
        raise TableMismatchError(f"level {level} tables are not produced here")
    if form is not None and form.weight != weight:
        raise TableMismatchError(f"file holds weight {weight}, expected {form.weight}")
    if limit is not None and file_limit < limit:
        raise TableMismatchError(f"file limit {file_limit} below requested {limit}")
    coeffs = [0] * (file_limit + 1)
    expect = 1
    for raw in body.decode("ascii").splitlines():
        parts = raw.split(",")
        if len(parts) != 2:
            raise TableFormatError(f"malformed row {raw!r}")
        try:
            n, val = int(parts[0]), int(parts[1])
        except ValueError:
            raise TableFormatError(f"non-integer row {raw!r}") from None
        if n != expect:
            raise TableFormatError(f"row order broken at n = {n} (expected {expect})")
        coeffs[n] = val
        expect += 1
    if expect != file_limit + 1:
        raise TableFormatError(f"file ends at n = {expect - 1}, header says {file_limit}")
    return CoefficientTable(descriptor, file_limit, coeffs)
