"""Words in group generators, their evaluation, and named element scripts.

Grammar (whitespace is ignored)::

    word     := term+
    term     := atom ('^' exponent)*
    atom     := NAME | '1' | '(' word ')'
    exponent := INT | '-' INT | '{' '-'? INT '}' | '(' '-'? INT ')'    -> power
              | NAME | '(' word ')' | '{' word '}'                      -> conjugation

A NAME is a letter followed by digits and primes, so ``ab`` is two names and
``t3'`` is one.  ``^`` binds to the atom immediately before it: ``ab^2`` is
``a*b*b``.  Conjugation follows ``g^h = h^-1 g h``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Union

from .errors import EmptyWord, ScriptError, UnboundName, WordSyntaxError


@dataclass(frozen=True)
class Generator:
    name: str


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Product:
    items: tuple["Word", ...]


@dataclass(frozen=True)
class Power:
    base: "Word"
    exponent: int


@dataclass(frozen=True)
class Conjugate:
    base: "Word"
    by: "Word"


Word = Union[Generator, Identity, Product, Power, Conjugate]


def product(items: Iterable[Word]) -> Word:
    """Canonical product: nested products flattened, singletons unwrapped."""
    flat: list[Word] = []
    for w in items:
        if isinstance(w, Product):
            flat.extend(w.items)
        else:
            flat.append(w)
    if not flat:
        return Identity()
    return flat[0] if len(flat) == 1 else Product(tuple(flat))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"([A-Za-z][0-9]*'*)|(\d+)|(.)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            toks.append(("name", m.group(1), m.start()))
        elif m.group(2):
            toks.append(("int", m.group(2), m.start()))
        else:
            ch = m.group(3)
            if ch.isspace():
                continue
            if ch not in "()^{}-":
                raise WordSyntaxError(f"unexpected character {ch!r}", text, m.start())
            toks.append((ch, ch, m.start()))
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str | None = None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise WordSyntaxError(msg, self.text, self.peek()[2])

    def word(self, closer: str) -> Word:
        terms = []
        while self.peek()[0] not in (closer, "end"):
            terms.append(self.term())
        if not terms:
            what = "empty word" if closer == "end" else "empty group"
            raise EmptyWord(what, self.text, self.peek()[2])
        return product(terms)

    def term(self) -> Word:
        w = self.atom()
        while self.peek()[0] == "^":
            self.take("^")
            w = self.exponent(w)
        return w

    def atom(self) -> Word:
        kind, val, _ = self.peek()
        if kind == "name":
            self.take()
            return Generator(val)
        if kind == "int":
            if val != "1":
                self.fail("only 1 may stand alone as an integer")
            self.take()
            return Identity()
        if kind == "(":
            self.take()
            w = self.word(")")
            self.take(")")
            return w
        self.fail(f"unexpected {val or 'end of input'!r}")

    def _bracketed_int(self, closer: str) -> int | None:
        """Integer exponent inside brackets, or None if the bracket holds a word."""
        k = 1
        sign = 1
        if self.peek(k)[0] == "-":
            sign = -1
            k += 1
        if self.peek(k)[0] == "int" and self.peek(k + 1)[0] == closer:
            value = sign * int(self.peek(k)[1])
            self.i += k + 2
            return value
        return None

    def exponent(self, base: Word) -> Word:
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            return Power(base, int(val))
        if kind == "-":
            self.take()
            return Power(base, -int(self.take("int")[1]))
        if kind == "name":
            self.take()
            return Conjugate(base, Generator(val))
        if kind in "({":
            closer = ")" if kind == "(" else "}"
            n = self._bracketed_int(closer)
            if n is not None:
                return Power(base, n)
            self.take()
            by = self.word(closer)
            self.take(closer)
            return Conjugate(base, by)
        self.fail("exponent expected after '^'")


def parse_word(text: str) -> Word:
    p = _Parser(text)
    w = p.word("end")
    p.take("end")
    return w


# ---------------------------------------------------------------------------
# printing

def _atom_str(w: Word) -> str:
    if isinstance(w, Generator):
        return w.name
    if isinstance(w, Identity):
        return "1"
    return "(" + word_str(w) + ")"


def word_str(w: Word) -> str:
    if isinstance(w, (Generator, Identity)):
        return _atom_str(w)
    if isinstance(w, Power):
        return f"{_atom_str(w.base)}^{w.exponent}"
    if isinstance(w, Conjugate):
        by = w.by.name if isinstance(w.by, Generator) else "(" + word_str(w.by) + ")"
        return f"{_atom_str(w.base)}^{by}"
    out = ""
    for item in w.items:
        s = word_str(item)
        # a space keeps "i0" followed by "1" from reading as "i01"
        if out and (out[-1].isdigit() or out[-1] == "'") and s[0].isdigit():
            out += " "
        out += s
    return out


def generators_of(w: Word) -> set[str]:
    if isinstance(w, Generator):
        return {w.name}
    if isinstance(w, Identity):
        return set()
    if isinstance(w, Power):
        return generators_of(w.base)
    if isinstance(w, Conjugate):
        return generators_of(w.base) | generators_of(w.by)
    return set().union(*(generators_of(i) for i in w.items))


def inverse_word(w: Word) -> Word:
    return Power(w, -1)


# ---------------------------------------------------------------------------
# evaluation

class Evaluator:
    """Evaluates words over an environment, caching repeated subwords."""

    def __init__(self, env: Mapping[str, Any]):
        self.env = env
        self.cache: dict[Word, Any] = {}
        self._identity = None

    def identity(self):
        if self._identity is None:
            if not self.env:
                raise UnboundName("an empty environment has no identity")
            self._identity = next(iter(self.env.values())) ** 0
        return self._identity

    def __call__(self, w: Word):
        hit = self.cache.get(w)
        if hit is not None:
            return hit
        if isinstance(w, Generator):
            try:
                val = self.env[w.name]
            except KeyError:
                raise UnboundName(f"generator {w.name!r} is not bound") from None
        elif isinstance(w, Identity):
            val = self.identity()
        elif isinstance(w, Power):
            val = self(w.base) ** w.exponent
        elif isinstance(w, Conjugate):
            h = self(w.by)
            val = h.inverse() * self(w.base) * h
        else:
            val = self(w.items[0])
            for item in w.items[1:]:
                val = val * self(item)
        self.cache[w] = val
        return val


def eval_word(w: Word | str, env: Mapping[str, Any]):
    if isinstance(w, str):
        w = parse_word(w)
    return Evaluator(env)(w)


# ---------------------------------------------------------------------------
# element scripts

TAGS = ("co1-exact", "monster-only")


@dataclass(frozen=True)
class ScriptEntry:
    name: str
    word: Word | None
    tag: str
    order: int | None = None
    text: str = field(default="", compare=False)
    line: int = field(default=0, compare=False)

    @property
    def is_input(self) -> bool:
        return self.word is None


@dataclass(frozen=True)
class ElementScript:
    entries: tuple[ScriptEntry, ...]

    def __getitem__(self, name: str) -> ScriptEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self, tag: str | None = None) -> list[str]:
        return [e.name for e in self.entries if tag is None or e.tag == tag]

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            if e.is_input:
                lines.append(f"input {e.name}  # {e.tag}")
            else:
                suffix = f" order={e.order}" if e.order is not None else ""
                lines.append(f"{e.name} = {word_str(e.word)}  # {e.tag}{suffix}")
        return "\n".join(lines) + "\n"


_ENTRY = re.compile(r"^([A-Za-z][0-9]*'*)\s*=\s*(.+?)\s*#\s*(\S+)(?:\s+order=(\d+))?\s*$")
_INPUT = re.compile(r"^input\s+(.+?)\s*#\s*(\S+)\s*$")


def parse_script(text: str) -> ElementScript:
    entries: list[ScriptEntry] = []
    defined: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _INPUT.match(line)
        if m:
            tag = m.group(2)
            new = [ScriptEntry(n, None, tag, line=lineno) for n in m.group(1).split()]
        else:
            m = _ENTRY.match(line)
            if not m:
                raise ScriptError(f"line {lineno}: cannot parse {line!r}")
            name, body, tag, order = m.groups()
            try:
                w = parse_word(body)
            except WordSyntaxError as exc:
                raise ScriptError(f"line {lineno} ({name}): {exc}") from exc
            new = [ScriptEntry(name, w, tag, int(order) if order else None, body, lineno)]
        for e in new:
            if e.tag not in TAGS:
                raise ScriptError(f"line {lineno}: unknown tag {e.tag!r}")
            if e.name in defined:
                raise ScriptError(f"line {lineno}: {e.name} defined twice")
            if e.word is not None:
                for g in generators_of(e.word):
                    if g not in defined:
                        raise ScriptError(f"line {lineno}: {e.name} uses {g} before it is defined")
                    if e.tag == "co1-exact" and defined[g] == "monster-only":
                        raise ScriptError(f"line {lineno}: {e.name} depends on monster-only {g}")
            defined[e.name] = e.tag
            entries.append(e)
    return ElementScript(tuple(entries))


def load_script(path: str | Path | None = None) -> ElementScript:
    path = Path(path) if path else Path(__file__).with_name("data") / "named_elements.script"
    return parse_script(path.read_text(encoding="utf-8"))


@dataclass
class ScriptRun:
    env: dict[str, Any]
    orders: dict[str, tuple[int, int]] = field(default_factory=dict)


def run_script(script: ElementScript, env: Mapping[str, Any],
               tags: Iterable[str] = ("co1-exact",), orders: bool = True) -> ScriptRun:
    """Evaluate the entries whose tag is in ``tags``; inputs must already be bound.

    Entries with an expected order have their computed order recorded in
    ``orders`` as ``(expected, computed)``.
    """
    tags = set(tags)
    out = dict(env)
    ev = Evaluator(out)
    run = ScriptRun(out)
    for e in script.entries:
        if e.tag not in tags:
            continue
        if e.is_input:
            if e.name not in out:
                raise UnboundName(f"script input {e.name!r} is not bound")
            continue
        try:
            out[e.name] = ev(e.word)
        except Exception as exc:
            raise ScriptError(f"evaluating {e.name}: {exc}") from exc
        if orders and e.order is not None:
            run.orders[e.name] = (e.order, out[e.name].order())
    return run


def evaluate_names(script: ElementScript, names: Iterable[str], env: Mapping[str, Any]) -> dict[str, Any]:
    """Values of the named entries, resolving script dependencies not bound in ``env``.

    Useful for evaluating a later part of a script in another representation,
    binding only the elements it is built from.
    """
    values = dict(env)
    ev = Evaluator(values)
    entries = {e.name: e for e in script.entries}

    def resolve(name: str):
        if name in values:
            return values[name]
        e = entries.get(name)
        if e is None or e.is_input:
            raise UnboundName(f"{name!r} is not bound")
        for g in sorted(generators_of(e.word)):
            resolve(g)
        values[name] = ev(e.word)
        return values[name]

    return {n: resolve(n) for n in names}
