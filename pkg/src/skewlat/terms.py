"""Identity/quasi-identity language over the two skew lattice operations.

Grammar: `^` is meet, `v` is join, `^` binds tighter than `v`, both left
associative, parentheses allowed. Variables are single letters a-z except
`v` (which is the join operator). Equations are joined by `,`; a
quasi-identity uses `=>` between the premises and the conclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources

from .core import SkewLattice

MAX_VARIABLES = 8  # n**8 at n=6 is ~1.7M evaluations, still instant


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (position {position})")


class VariableLimitError(ValueError):
    pass


# Terms are nested tuples: ("var", name) | ("meet", l, r) | ("join", l, r)


@dataclass(frozen=True)
class Formula:
    premises: tuple  # of (Term, Term)
    conclusion: tuple  # (Term, Term)

    @property
    def is_identity(self) -> bool:
        return not self.premises

    @property
    def variables(self) -> tuple:
        seen = set()
        for lhs, rhs in self.premises + (self.conclusion,):
            seen |= term_variables(lhs) | term_variables(rhs)
        return tuple(sorted(seen))

    def __str__(self):
        body = format_equation(*self.conclusion)
        if not self.premises:
            return body
        pre = ", ".join(format_equation(l, r) for l, r in self.premises)
        return f"{pre} => {body}"


def term_variables(term) -> set:
    if term[0] == "var":
        return {term[1]}
    return term_variables(term[1]) | term_variables(term[2])


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "=" and i + 1 < len(text) and text[i + 1] == ">":
            tokens.append(("IMP", i))
            i += 2
        elif c in "=,()^":
            tokens.append((c, i))
            i += 1
        elif c == "v":
            tokens.append(("JOIN", i))
            i += 1
        elif c.isalpha() and c.islower():
            tokens.append(("VAR:" + c, i))
            i += 1
        else:
            raise ParseError(f"unknown symbol {c!r}", i)
    tokens.append(("END", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def here(self):
        return self.tokens[self.pos][1]

    def eat(self, kind=None):
        tok, at = self.tokens[self.pos]
        if kind is not None and tok != kind:
            raise ParseError(f"expected {kind!r}, found {tok!r}", at)
        self.pos += 1
        return tok

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.eat()
            t = self.join_expr()
            self.eat(")")
            return t
        if tok.startswith("VAR:"):
            self.eat()
            return ("var", tok[4:])
        raise ParseError(f"expected a variable or '(', found {tok!r}", self.here())

    def meet_expr(self):
        t = self.atom()
        while self.peek() == "^":
            self.eat()
            t = ("meet", t, self.atom())
        return t

    def join_expr(self):
        t = self.meet_expr()
        while self.peek() == "JOIN":
            self.eat()
            t = ("join", t, self.meet_expr())
        return t

    def equation(self):
        lhs = self.join_expr()
        self.eat("=")
        if self.peek() == "END":
            raise ParseError("missing right-hand side", self.here())
        rhs = self.join_expr()
        return (lhs, rhs)

    def formula(self):
        eqs = [self.equation()]
        while self.peek() == ",":
            self.eat()
            eqs.append(self.equation())
        if self.peek() == "IMP":
            self.eat()
            conclusion = self.equation()
            if self.peek() == ",":
                raise ParseError("only one conclusion allowed after '=>'", self.here())
            f = Formula(tuple(eqs), conclusion)
        else:
            if len(eqs) != 1:
                raise ParseError("several equations but no '=>'", self.here())
            f = Formula((), eqs[0])
        self.eat("END")
        return f


def parse(text: str) -> Formula:
    f = _Parser(text).formula()
    if len(f.variables) > MAX_VARIABLES:
        raise VariableLimitError(f"{len(f.variables)} variables exceed the limit {MAX_VARIABLES}")
    return f


_PREC = {"join": 1, "meet": 2, "var": 3}


def format_term(term) -> str:
    """Minimal-parenthesis printing; parse(format_term(t)) == t."""
    kind = term[0]
    if kind == "var":
        return term[1]
    op = "^" if kind == "meet" else "v"
    left = format_term(term[1])
    right = format_term(term[2])
    if _PREC[term[1][0]] < _PREC[kind]:
        left = f"({left})"
    if _PREC[term[2][0]] <= _PREC[kind]:  # left associative: wrap equal-prec rhs
        right = f"({right})"
    return f"{left} {op} {right}"


def format_equation(lhs, rhs) -> str:
    return f"{format_term(lhs)} = {format_term(rhs)}"


def evaluate(S: SkewLattice, term, env: dict) -> int:
    kind = term[0]
    if kind == "var":
        return env[term[1]]
    a = evaluate(S, term[1], env)
    b = evaluate(S, term[2], env)
    return S.pair.meet[a][b] if kind == "meet" else S.pair.join[a][b]


def holds(S: SkewLattice, f: Formula):
    """True, or the lexicographically first failing assignment (a dict).

    Evaluation is the exhaustive universal check over all n**k assignments
    in lexicographic order of the sorted variable names.
    """
    vars_ = f.variables
    if len(vars_) > MAX_VARIABLES:
        raise VariableLimitError(f"{len(vars_)} variables exceed the limit {MAX_VARIABLES}")
    for values in itertools.product(range(S.n), repeat=len(vars_)):
        env = dict(zip(vars_, values))
        if all(evaluate(S, l, env) == evaluate(S, r, env) for l, r in f.premises):
            if evaluate(S, f.conclusion[0], env) != evaluate(S, f.conclusion[1], env):
                return env
    return True


def holds_at(S: SkewLattice, f: Formula, env: dict):
    """Evaluate one assignment; returns (premises_ok, lhs, rhs)."""
    pre = all(evaluate(S, l, env) == evaluate(S, r, env) for l, r in f.premises)
    return pre, evaluate(S, f.conclusion[0], env), evaluate(S, f.conclusion[1], env)


# --- formula files and the bundled library ---------------------------------
#
# Formula files: one formula per line, '#' comments. Library lines are
# "name: formula".


def parse_library(text: str) -> dict:
    out = {}
    for lineno, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if ":" not in ln:
            raise ParseError(f"library line {lineno} lacks a 'name:' prefix", 0)
        name, body = ln.split(":", 1)
        name = name.strip()
        if name in out:
            raise ParseError(f"library line {lineno} redefines {name!r}", 0)
        out[name] = parse(body)
    return out


def parse_formula_file(text: str) -> list:
    return [
        parse(ln)
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]


def library() -> dict:
    """The bundled named identities and implications."""
    text = resources.files("skewlat").joinpath("formulas.txt").read_text(encoding="utf-8")
    return parse_library(text)
