"""Math expression handling: syntax repair, parsing, canonicalization, equivalence.

Expressions are immutable trees over exact rationals.  Equality checking is
structural on canonical forms first, with seeded numeric sampling as the
fallback for algebraically equal but structurally different expressions.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import numwords
from .errors import IncompatibleUnits, ParseFailure
from .symnorm import GREEK_NAMES


# ---------------------------------------------------------------------------
# expression nodes


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Add:
    terms: tuple


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: object


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple


@dataclass(frozen=True)
class Quantity:
    magnitude: object
    unit: str


Expr = Num | Sym | Add | Mul | Pow | Fn | Quantity

_CONSTANT_SYMBOLS = frozenset({"π", "e"})


@dataclass(frozen=True)
class EquivalenceConfig:
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    sample_count: int = 8
    sample_lo: float = 0.1
    sample_hi: float = 2.5
    rng_seed: int = 1729

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")


DEFAULT_EQUIVALENCE = EquivalenceConfig()


# ---------------------------------------------------------------------------
# units

_UNIT_ALIASES = {
    "ft": ("ft", "feet", "foot"),
    "m": ("m", "meter", "meters", "metre", "metres"),
    "km": ("km", "kilometer", "kilometers", "kilometre", "kilometres"),
    "cm": ("cm", "centimeter", "centimeters", "centimetre", "centimetres"),
    "mm": ("mm", "millimeter", "millimeters", "millimetre", "millimetres"),
    "g": ("g", "gram", "grams"),
    "kg": ("kg", "kilogram", "kilograms"),
    "s": ("s", "sec", "secs", "second", "seconds"),
    "min": ("min", "mins", "minute", "minutes"),
    "h": ("h", "hr", "hrs", "hour", "hours"),
    "deg": ("deg", "degree", "degrees"),
    "%": ("%",),
}
_ALIAS_TO_UNIT = {alias: unit for unit, aliases in _UNIT_ALIASES.items() for alias in aliases}

# (dimension, factor relative to the dimension's base unit)
_UNIT_SCALE = {
    "ft": ("imperial-length", Fraction(1)),
    "m": ("length", Fraction(1)),
    "km": ("length", Fraction(1000)),
    "cm": ("length", Fraction(1, 100)),
    "mm": ("length", Fraction(1, 1000)),
    "g": ("mass", Fraction(1)),
    "kg": ("mass", Fraction(1000)),
    "s": ("time", Fraction(1)),
    "min": ("time", Fraction(60)),
    "h": ("time", Fraction(3600)),
    "deg": ("angle", Fraction(1)),
    "%": ("percent", Fraction(1)),
}
_DIMENSION_BASE = {"imperial-length": "ft", "length": "m", "mass": "g",
                   "time": "s", "angle": "deg", "percent": "%"}


def unit_of(token: str) -> str | None:
    return _ALIAS_TO_UNIT.get(token.lower())


def is_unit_word(token: str) -> bool:
    return token.lower() in _ALIAS_TO_UNIT


def _unit_mentioned(unit: str, question: str) -> bool:
    if not question:
        return False
    q = question.lower()
    if unit == "%":
        return "%" in q or "percent" in q
    return any(re.search(rf"\b{re.escape(a)}\b", q) for a in _UNIT_ALIASES[unit])


# ---------------------------------------------------------------------------
# syntax repair

_SUPERSCRIPTS = {"⁰": "0", "¹": "1", "²": "2", "³": "3", "⁴": "4",
                 "⁵": "5", "⁶": "6", "⁷": "7", "⁸": "8", "⁹": "9", "⁻": "-"}
_SUPERSCRIPT_RE = re.compile("[" + "".join(_SUPERSCRIPTS) + "]+")
_DROP_COMMANDS = ("left", "right", "boxed", "fbox", "framebox", "displaystyle",
                  "textbf", "mathbf", "mathit", "limits", "big", "Big", "bigg", "Bigg")
_TEXT_WRAP_RE = re.compile(r"\\(?:text|textrm|textit|mathrm|mbox|operatorname)\s*\{([^{}]*)\}")
_THOUSANDS_RE = re.compile(r"(\d),(\d{3})(?!\d)")


def repair_syntax(src: str) -> str:
    """Best-effort repair of common notation damage; idempotent by construction."""
    s = src
    # math fences
    for fence in ("$", "\\(", "\\)", "\\[", "\\]"):
        s = s.replace(fence, " ")
    # decorative commands contribute nothing to structure
    for cmd in _DROP_COMMANDS:
        s = re.sub(rf"\\{cmd}\b", " ", s)
    s = re.sub(r"\\[dt]frac\b", r"\\frac", s)
    s = _TEXT_WRAP_RE.sub(r" \1 ", s)
    # unicode operators and digits
    s = (s.replace("×", " \\times ").replace("·", " \\cdot ")
          .replace("÷", " \\div ").replace("⁄", "/").replace("\u2212", "-"))
    s = _SUPERSCRIPT_RE.sub(lambda m: "^{" + "".join(_SUPERSCRIPTS[c] for c in m.group(0)) + "}", s)
    s = re.sub(r"\^\s*(?:\{\s*\\circ\s*\}|\\circ)", " degrees", s)
    s = s.replace("°", " degrees")
    s = s.replace("\\%", "%")
    # a backslash not starting a command is junk; left in place it could fuse
    # with a balancer-appended closer into a fresh "\)" fence next pass
    s = re.sub(r"\\+(?![a-zA-Z])", " ", s)
    # thousands separators inside digit runs
    while True:
        s2 = _THOUSANDS_RE.sub(r"\1\2", s)
        if s2 == s:
            break
        s = s2
    # malformed \frac arguments
    s = re.sub(r"\\frac\s*([0-9a-zA-Z])\s*([0-9a-zA-Z])(?![a-zA-Z])", r"\\frac{\1}{\2}", s)
    s = re.sub(r"\\frac\s*\{([^{}]*)\}\s*([0-9a-zA-Z])(?![0-9a-zA-Z])", r"\\frac{\1}{\2}", s)
    s = re.sub(r"\\frac\s*([0-9a-zA-Z])\s*(\{[^{}]*\})", r"\\frac{\1}\2", s)
    s = re.sub(r"\\frac\s*(\\[a-zA-Z]+)\s*([0-9a-zA-Z])(?![a-zA-Z])", r"\\frac{\1}{\2}", s)
    # missing braces after \sqrt, ^ and _
    s = re.sub(r"\\sqrt\s*(?!\[|\{)([0-9]+|[a-zA-Z]|\\[a-zA-Z]+)", r"\\sqrt{\1}", s)
    s = re.sub(r"([\^_])\s*(?!\{)(-?[0-9]+|-?[A-Za-z\u0370-\u03FF]|\\[a-zA-Z]+)", r"\1{\2}", s)
    s = _balance_delimiters(s)
    return " ".join(s.split())


_OPENERS = {"(": ")", "[": "]", "{": "}"}
_CLOSERS = {v: k for k, v in _OPENERS.items()}


def _balance_delimiters(s: str) -> str:
    out: list[str] = []
    stack: list[str] = []
    for ch in s:
        if ch in _OPENERS:
            stack.append(ch)
            out.append(ch)
        elif ch in _CLOSERS:
            if stack and stack[-1] == _CLOSERS[ch]:
                stack.pop()
                out.append(ch)
            # unmatched closers are dropped
        else:
            out.append(ch)
    while stack:
        out.append(_OPENERS[stack.pop()])
    return "".join(out)


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"""(?P<num>\d+\.\d+(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE](?=[+-]?\d)[+-]?\d+)?)
      | (?P<cmd>\\[a-zA-Z]+)
      | (?P<name>[A-Za-z\u0370-\u03FF](?:_(?:\{[^{}]*\}|[A-Za-z0-9]+)|[0-9]{1,2})?[A-Za-z\u0370-\u03FF]*)
      | (?P<op>[-+*/^=])
      | (?P<lp>[(\[{])
      | (?P<rp>[)\]}])
      | (?P<pct>%)
      | (?P<ws>\s+|\\[,;!:]|,)
    """,
    re.VERBOSE,
)

_FUNCTIONS = ("sin", "cos", "tan", "log", "ln", "exp", "abs", "sqrt")
_CMD_OPS = {"times": "*", "cdot": "*", "div": "/"}
_WORDLIKE_NAME_RE = re.compile(r"^[A-Za-z]{2,}$")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if not m:
            raise ParseFailure(f"unexpected character {src[i]!r}", i)
        i = m.end()
        kind = m.lastgroup
        text = m.group(0)
        if kind == "ws":
            continue
        if kind == "cmd":
            name = text[1:]
            if name in _CMD_OPS:
                tokens.append(_Token("op", _CMD_OPS[name], m.start()))
            elif name == "frac":
                tokens.append(_Token("frac", name, m.start()))
            elif name == "sqrt":
                tokens.append(_Token("sqrt", name, m.start()))
            elif name == "pi" or name in GREEK_NAMES:
                tokens.append(_Token("name", name, m.start()))
            elif name in _FUNCTIONS:
                tokens.append(_Token("name", name, m.start()))
            else:
                raise ParseFailure(f"unsupported command \\{name}", m.start())
        else:
            tokens.append(_Token(kind, text, m.start()))
    tokens.append(_Token("eof", "", len(src)))
    return tokens


# ---------------------------------------------------------------------------
# parser

_MATCHING = {"(": ")", "[": "]", "{": "}"}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def fail(self, message: str):
        raise ParseFailure(message, self.peek().pos)

    def parse_full(self) -> Expr:
        expr = self.parse_sum()
        if self.peek().kind == "op" and self.peek().text == "=":
            if not isinstance(expr, Sym):
                self.fail("left side of '=' must be a single symbol")
            self.next()
            expr = self.parse_sum()
        unit = self.parse_unit_suffix()
        if self.peek().kind != "eof":
            self.fail(f"unexpected trailing {self.peek().text!r}")
        if unit is not None:
            return Quantity(expr, unit)
        return expr

    def parse_unit_suffix(self) -> str | None:
        tok = self.peek()
        if tok.kind == "pct":
            self.next()
            return "%"
        if tok.kind == "name" and is_unit_word(tok.text) and self.peek(1).kind == "eof":
            self.next()
            return tok.text.lower()
        return None

    def parse_sum(self) -> Expr:
        terms = [self.parse_term()]
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            term = self.parse_term()
            terms.append(term if op == "+" else Mul((Num(Fraction(-1)), term)))
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def _starts_implicit_factor(self) -> bool:
        tok = self.peek()
        if tok.kind in ("lp", "frac", "sqrt"):
            return True
        if tok.kind == "name":
            # a trailing unit word belongs to the quantity suffix, not the term
            if is_unit_word(tok.text) and self.peek(1).kind == "eof":
                return False
            return True
        return False

    def parse_term(self) -> Expr:
        factors = [self.parse_unary()]
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.next()
                nxt = self.parse_unary()
                factors.append(nxt if tok.text == "*" else Pow(nxt, Num(Fraction(-1))))
            elif self._starts_implicit_factor():
                factors.append(self.parse_unary())
            else:
                break
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def parse_unary(self) -> Expr:
        sign = 1
        while self.peek().kind == "op" and self.peek().text in "+-":
            if self.next().text == "-":
                sign = -sign
        expr = self.parse_power()
        if sign < 0:
            return Mul((Num(Fraction(-1)), expr))
        return expr

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.next()
            return Pow(base, self.parse_unary())
        return base

    def parse_group(self) -> Expr:
        if self.peek().kind == "lp":
            return self.parse_atom()
        return self.parse_unary()

    def parse_atom(self) -> Expr:
        tok = self.next()
        if tok.kind == "num":
            try:
                return Num(Fraction(Decimal(tok.text)))
            except (InvalidOperation, ValueError):
                raise ParseFailure(f"bad number {tok.text!r}", tok.pos) from None
        if tok.kind == "lp":
            inner = self.parse_sum()
            closer = self.next()
            if closer.kind != "rp" or closer.text != _MATCHING[tok.text]:
                self.fail(f"expected {_MATCHING[tok.text]!r}")
            return inner
        if tok.kind == "frac":
            numer = self.parse_group()
            denom = self.parse_group()
            return Mul((numer, Pow(denom, Num(Fraction(-1)))))
        if tok.kind == "sqrt":
            degree = Fraction(2)
            if self.peek().kind == "lp" and self.peek().text == "[":
                self.next()
                deg = self.parse_sum()
                closer = self.next()
                if closer.kind != "rp" or closer.text != "]":
                    self.fail("expected ']'")
                if not isinstance(deg, Num):
                    self.fail("root degree must be a number")
                degree = deg.value
            arg = self.parse_group()
            return Pow(arg, Num(Fraction(1) / degree))
        if tok.kind == "name":
            return self.parse_name(tok)
        raise ParseFailure(f"unexpected token {tok.text!r}", tok.pos)

    def parse_name(self, tok: _Token) -> Expr:
        lower = tok.text.lower()
        if lower in numwords.NUMBER_WORDS:
            words = [lower]
            while True:
                nxt = self.peek()
                if nxt.kind == "name" and nxt.text.lower() in numwords.NUMBER_WORDS:
                    words.append(self.next().text.lower())
                elif (nxt.kind == "name" and nxt.text.lower() == "and"
                      and self.peek(1).kind == "name"
                      and self.peek(1).text.lower() in numwords.NUMBER_WORDS):
                    self.next()
                    words.append("and")
                else:
                    break
            value = numwords.parse_number_words(words)
            if value is None:
                raise ParseFailure(f"bad number words near {tok.text!r}", tok.pos)
            return Num(Fraction(value))
        if lower == "pi" or tok.text == "π":
            return Sym("π")
        if lower in GREEK_NAMES:
            return Sym(GREEK_NAMES[lower])
        if tok.text in GREEK_NAMES.values():
            return Sym(tok.text)
        if lower in _FUNCTIONS:
            if lower == "sqrt":
                arg = self.parse_function_arg()
                return Pow(arg, Num(Fraction(1, 2)))
            return Fn(lower, (self.parse_function_arg(),))
        if len(tok.text) == 1 or re.fullmatch(r"[A-Za-z\u0370-\u03FF](_.+|[0-9]{1,2})", tok.text):
            return Sym(tok.text)
        raise ParseFailure(f"unknown word {tok.text!r}", tok.pos)

    def parse_function_arg(self) -> Expr:
        if self.peek().kind == "lp":
            return self.parse_atom()
        return self.parse_power()


def parse_expression(src: str) -> Expr:
    """Parse plain/LaTeX math, scientific notation, number words, and units."""
    if not src or not src.strip():
        raise ParseFailure("empty expression", 0)
    return _Parser(_tokenize(src)).parse_full()


# ---------------------------------------------------------------------------
# canonicalization

_KIND_RANK = {Num: "0", Sym: "1", Pow: "2", Fn: "3", Add: "4", Mul: "5", Quantity: "6"}


def expr_key(e: Expr) -> str:
    """Total, platform-independent ordering key for canonical sorting."""
    if isinstance(e, Num):
        return "0:" + str(e.value)
    if isinstance(e, Sym):
        return "1:" + e.name
    if isinstance(e, Pow):
        return "2:(" + expr_key(e.base) + "^" + expr_key(e.exp) + ")"
    if isinstance(e, Fn):
        return "3:" + e.name + "(" + ",".join(expr_key(a) for a in e.args) + ")"
    if isinstance(e, Add):
        return "4:(" + "+".join(expr_key(t) for t in e.terms) + ")"
    if isinstance(e, Mul):
        return "5:(" + "*".join(expr_key(f) for f in e.factors) + ")"
    if isinstance(e, Quantity):
        return "6:" + expr_key(e.magnitude) + "@" + e.unit
    raise TypeError(f"not an expression: {e!r}")


def _exact_root(value: Fraction, degree: int) -> Fraction | None:
    if value < 0:
        return None

    def int_root(n: int) -> int | None:
        if n in (0, 1):
            return n
        guess = round(n ** (1.0 / degree))
        for cand in (guess - 1, guess, guess + 1):
            if cand >= 0 and cand**degree == n:
                return cand
        return None

    rn = int_root(value.numerator)
    rd = int_root(value.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _split_coeff(e: Expr) -> tuple[Fraction, Expr | None]:
    if isinstance(e, Num):
        return e.value, None
    if isinstance(e, Mul) and e.factors and isinstance(e.factors[0], Num):
        rest = e.factors[1:]
        core = rest[0] if len(rest) == 1 else Mul(rest)
        return e.factors[0].value, core
    return Fraction(1), e


def _scaled(core: Expr, coeff: Fraction) -> Expr:
    if coeff == 1:
        return core
    if isinstance(core, Mul):
        return Mul((Num(coeff),) + core.factors)
    return Mul((Num(coeff), core))


def _canon_add(terms: tuple) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        if isinstance(t, Add):
            flat.extend(t.terms)
        else:
            flat.append(t)
    grouped: dict[str, tuple[Fraction, Expr | None]] = {}
    constant = Fraction(0)
    for t in flat:
        coeff, core = _split_coeff(t)
        if core is None:
            constant += coeff
            continue
        key = expr_key(core)
        prev = grouped.get(key)
        grouped[key] = ((prev[0] + coeff) if prev else coeff, core)
    parts = [_scaled(core, coeff) for _, (coeff, core) in sorted(grouped.items()) if coeff != 0]
    if constant != 0 or not parts:
        parts.append(Num(constant))
    if len(parts) == 1:
        return parts[0]
    return Add(tuple(sorted(parts, key=expr_key)))


def _canon_mul(factors: tuple) -> Expr:
    flat: list[Expr] = []
    for f in factors:
        if isinstance(f, Mul):
            flat.extend(f.factors)
        else:
            flat.append(f)
    coeff = Fraction(1)
    bases: dict[str, tuple[Expr, list[Expr]]] = {}
    for f in flat:
        if isinstance(f, Num):
            coeff *= f.value
            continue
        base, exp = (f.base, f.exp) if isinstance(f, Pow) else (f, Num(Fraction(1)))
        key = expr_key(base)
        bases.setdefault(key, (base, []))[1].append(exp)
    if coeff == 0:
        return Num(Fraction(0))
    out: list[Expr] = []
    for _, (base, exps) in sorted(bases.items()):
        exp = exps[0] if len(exps) == 1 else canonicalize(Add(tuple(exps)))
        folded = _canon_pow(base, exp)
        if isinstance(folded, Num):
            coeff *= folded.value
        elif isinstance(folded, Mul):
            inner_coeff, core = _split_coeff(folded)
            coeff *= inner_coeff
            if core is not None:
                out.extend(core.factors if isinstance(core, Mul) else (core,))
        else:
            out.append(folded)
    if coeff == 0:
        return Num(Fraction(0))
    if not out:
        return Num(coeff)
    out.sort(key=expr_key)
    if coeff == 1:
        return out[0] if len(out) == 1 else Mul(tuple(out))
    return Mul((Num(coeff),) + tuple(out))


def _canon_pow(base: Expr, exp: Expr) -> Expr:
    if isinstance(base, Num) and isinstance(exp, Num):
        if exp.value.denominator == 1:
            n = exp.value.numerator
            if not (base.value == 0 and n <= 0):
                return Num(base.value**n)
            return Pow(base, exp)
        if base.value >= 0:
            root = _exact_root(base.value, exp.value.denominator)
            if root is not None and not (root == 0 and exp.value.numerator < 0):
                return Num(root**exp.value.numerator)
        return Pow(base, exp)
    if isinstance(exp, Num):
        if exp.value == 0:
            return Num(Fraction(1))
        if exp.value == 1:
            return base
    if isinstance(base, Pow) and isinstance(base.exp, Num) and isinstance(exp, Num):
        inner_ok = not isinstance(base.base, Num) or base.base.value > 0
        if inner_ok:
            return _canon_pow(base.base, Num(base.exp.value * exp.value))
    if isinstance(base, Mul) and isinstance(exp, Num) and exp.value.denominator == 1:
        return _canon_mul(tuple(_canon_pow(f, exp) for f in base.factors))
    return Pow(base, exp)


def canonicalize(e: Expr) -> Expr:
    """Fold constants exactly, combine like terms/factors, sort children."""
    if isinstance(e, (Num, Sym)):
        return e
    if isinstance(e, Add):
        return _canon_add(tuple(canonicalize(t) for t in e.terms))
    if isinstance(e, Mul):
        return _canon_mul(tuple(canonicalize(f) for f in e.factors))
    if isinstance(e, Pow):
        return _canon_pow(canonicalize(e.base), canonicalize(e.exp))
    if isinstance(e, Fn):
        return Fn(e.name, tuple(canonicalize(a) for a in e.args))
    if isinstance(e, Quantity):
        return Quantity(canonicalize(e.magnitude), e.unit)
    raise TypeError(f"not an expression: {e!r}")


def free_symbols(e: Expr) -> frozenset[str]:
    if isinstance(e, Sym):
        return frozenset() if e.name in _CONSTANT_SYMBOLS else frozenset({e.name})
    if isinstance(e, Num):
        return frozenset()
    if isinstance(e, Add):
        return frozenset().union(*(free_symbols(t) for t in e.terms))
    if isinstance(e, Mul):
        return frozenset().union(*(free_symbols(f) for f in e.factors))
    if isinstance(e, Pow):
        return free_symbols(e.base) | free_symbols(e.exp)
    if isinstance(e, Fn):
        return frozenset().union(*(free_symbols(a) for a in e.args)) if e.args else frozenset()
    if isinstance(e, Quantity):
        return free_symbols(e.magnitude)
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# numeric evaluation (sampling fallback)


class _SingularEvaluation(Exception):
    pass


_FN_TABLE = {"sin": math.sin, "cos": math.cos, "tan": math.tan,
             "ln": math.log, "exp": math.exp, "abs": abs,
             "log": math.log10}


def evaluate_numeric(e: Expr, env: dict[str, float]) -> float:
    try:
        value = _eval(e, env)
    except (ZeroDivisionError, ValueError, OverflowError, KeyError) as exc:
        raise _SingularEvaluation(str(exc)) from exc
    if isinstance(value, complex) or not math.isfinite(value):
        raise _SingularEvaluation("non-finite value")
    return value


def _eval(e: Expr, env: dict[str, float]) -> float:
    if isinstance(e, Num):
        return float(e.value)
    if isinstance(e, Sym):
        if e.name == "π":
            return math.pi
        if e.name == "e":
            return math.e
        return env[e.name]
    if isinstance(e, Add):
        return sum(_eval(t, env) for t in e.terms)
    if isinstance(e, Mul):
        out = 1.0
        for f in e.factors:
            out *= _eval(f, env)
        return out
    if isinstance(e, Pow):
        base = _eval(e.base, env)
        exp = _eval(e.exp, env)
        if base < 0 and exp != int(exp):
            raise ValueError("negative base with fractional exponent")
        if base == 0 and exp < 0:
            raise ZeroDivisionError("zero base with negative exponent")
        return base**exp
    if isinstance(e, Fn):
        return _FN_TABLE[e.name](_eval(e.args[0], env))
    if isinstance(e, Quantity):
        return _eval(e.magnitude, env)
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# units and equivalence


def normalize_units(e: Expr, question: str = "") -> Expr:
    """Fold a trailing unit token to its canonical alias ("feet" -> "ft")."""
    if not isinstance(e, Quantity):
        return e
    unit = unit_of(e.unit)
    if unit is None:
        return e
    return Quantity(canonicalize(e.magnitude), unit)


def _to_base(e: Quantity) -> Quantity:
    dimension, factor = _UNIT_SCALE[e.unit]
    magnitude = e.magnitude
    if factor != 1:
        magnitude = canonicalize(Mul((Num(factor), magnitude)))
    return Quantity(magnitude, _DIMENSION_BASE[dimension])


def compare_units(a: Expr, b: Expr, question: str = "") -> tuple[Expr, Expr]:
    """Resolve unit tags on a compared pair.

    Both sides tagged: tags cancel, rescaling within a dimension (km vs m).
    Exactly one side tagged: the tag drops only when the question names the
    unit; otherwise the pair is incompatible.
    """
    a_q, b_q = isinstance(a, Quantity), isinstance(b, Quantity)
    if a_q and b_q:
        sa, sb = _to_base(a), _to_base(b)
        if sa.unit != sb.unit:
            raise IncompatibleUnits(f"{a.unit} vs {b.unit}")
        return sa.magnitude, sb.magnitude
    if a_q or b_q:
        tagged = a if a_q else b
        if _unit_mentioned(tagged.unit, question):
            bare = canonicalize(tagged.magnitude)
            return (bare, b) if a_q else (a, bare)
        raise IncompatibleUnits(f"{tagged.unit} present on one side only")
    return a, b


def _is_percent(e: Expr) -> bool:
    return isinstance(e, Quantity) and unit_of(e.unit) == "%"


def _resolve_percent(a: Expr, b: Expr, question: str) -> tuple[Expr, Expr]:
    a_pct, b_pct = _is_percent(a), _is_percent(b)
    if not (a_pct or b_pct):
        return a, b
    asks_percent = bool(question) and ("%" in question or "percent" in question.lower())
    if (a_pct and b_pct) or asks_percent:
        hundredth = Num(Fraction(1, 100))
        if a_pct:
            a = canonicalize(Mul((hundredth, a.magnitude)))
        if b_pct:
            b = canonicalize(Mul((hundredth, b.magnitude)))
    return a, b


def math_equivalent(a: str, b: str, cfg: EquivalenceConfig | None = None,
                    question: str = "") -> bool:
    """True when both sides parse and agree structurally or numerically."""
    cfg = cfg or DEFAULT_EQUIVALENCE
    try:
        ea = parse_expression(repair_syntax(a))
        eb = parse_expression(repair_syntax(b))
    except ParseFailure:
        return False
    ca, cb = canonicalize(ea), canonicalize(eb)
    ca, cb = _resolve_percent(ca, cb, question)
    ua, ub = normalize_units(ca, question), normalize_units(cb, question)
    try:
        ma, mb = compare_units(ua, ub, question)
    except IncompatibleUnits:
        return False
    if ma == mb:
        return True
    syms = free_symbols(ma)
    if syms != free_symbols(mb):
        return False
    return _numeric_agree(ma, mb, sorted(syms), cfg)


def _numeric_agree(a: Expr, b: Expr, names: list[str], cfg: EquivalenceConfig) -> bool:
    rng = random.Random(cfg.rng_seed)
    evaluated = 0
    for _ in range(cfg.sample_count):
        for _attempt in range(4):  # one draw plus at most three retries
            env = {name: rng.uniform(cfg.sample_lo, cfg.sample_hi) for name in names}
            try:
                va = evaluate_numeric(a, env)
                vb = evaluate_numeric(b, env)
            except _SingularEvaluation:
                if not names:
                    return False
                continue
            if abs(va - vb) > cfg.abs_tol + cfg.rel_tol * max(abs(va), abs(vb)):
                return False
            evaluated += 1
            break
        if not names:
            break  # constant expressions need a single evaluation
    return evaluated > 0
