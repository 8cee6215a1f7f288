"""A small line-oriented binding language for building and checking structures.

::

    # comments start with '#'
    let D = divisor 2[0] + [1]
    let T = torus (1,0) (1*i,0) (0,1) (0,1*i)
    let K = kodaira a1=1 a3=1 b1=-1 b3=1*i c2=1+1*i d2=1 r=1
    let S = structure torus_gd(D, T, k=3/2)
    let M = morphism torus_zeta(D, k=2)
    let g = element D (1/2; z + exp(z))
    let S2 = conjugate S g
    let C = compose M1 M2
    verify S
    normal S2
    moduli gdp D
    basis D
    act g (1, 2)
    mul g g

Parsing and name/type checks happen for the whole program before anything
runs.  Runtime validation errors are reported and execution continues;
statements depending on a failed binding report ``DependencyFailed``.
"""

from __future__ import annotations

import random
import re
import shlex
from dataclasses import dataclass, field

from .errors import ExoticaError, ParseError, TypeMismatch, UnboundName
from .exppoly import vd_basis
from .grammar import (parse_divisor, parse_exppoly, parse_gaussrat, parse_scalar,
                      split_top_level)
from .groups import GdElement, GdpElement, SurfacePoint
from .homogeneous import CATALOG, compose_inducing, verify_inducing
from .moduli import moduli_gd_torus, moduli_gdp_torus
from .surfaces import (KodairaGroup, TorusLattice, build_kodaira_gd, build_kodaira_gdp,
                       build_torus_gd, build_torus_gdp, build_torus_gdp_exp, conjugate_system,
                       normal_form, verify_developing_system)

__all__ = ["Statement", "SpecProgram", "RunResult", "parse_spec", "run_spec"]

# tag -> (positional kinds, keyword names, model kind, builder)
STRUCTURES = {
    "torus_gd": (("divisor", "torus"), ("k",), "gd", build_torus_gd),
    "torus_exp": (("divisor", "torus"), (), "gdp", build_torus_gdp_exp),
    "torus_gdp": (("divisor", "torus"), ("a", "k"), "gdp", build_torus_gdp),
    "kodaira_gd": (("divisor", "kodaira"), ("k",), "gd", build_kodaira_gd),
    "kodaira_gdp": (("divisor", "kodaira"), ("lambda", "k"), "gdp", build_kodaira_gdp),
}

MORPHISMS = {
    "torus_zeta": (("divisor",), ("k",)),
    "torus_exp": (("divisor",), ()),
    "torus_zeta_prime": (("divisor",), ("a", "k")),
    "vitter": ((), ("k",)),
    "kodaira_gd": ((), ("n", "k")),
    "kodaira_gdp": ((), ("n", "lambda", "k")),
}

KODAIRA_KEYS = ("a1", "a3", "b1", "b3", "c2", "d2", "r")
LET_KINDS = ("divisor", "torus", "kodaira", "structure", "morphism", "element", "conjugate",
             "compose")
COMMANDS = ("verify", "normal", "moduli", "basis", "act", "mul")

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_LET = re.compile(rf"let\s+(?P<name>{_NAME})\s*=\s*(?P<kind>{_NAME})\s*(?P<rest>.*)$")
_CALL = re.compile(rf"(?P<tag>{_NAME})\s*\((?P<args>.*)\)\s*$")
_KEYWORD = re.compile(rf"\s*(?P<key>{_NAME})\s*=(?P<value>.*)$")
_INT = re.compile(r"\s*-?\d+\s*$")


@dataclass
class Statement:
    line: int
    op: str
    name: str | None = None
    refs: tuple = ()
    values: dict = field(default_factory=dict)
    raw_refs: list = field(default_factory=list)


@dataclass
class SpecProgram:
    statements: list
    types: dict


@dataclass
class RunResult:
    code: int
    lines: list

    @property
    def text(self):
        return "".join(line + "\n" for line in self.lines)


# parsing ---------------------------------------------------------------------

def _groups(text, offset):
    """Top-level parenthesized groups of ``text`` with their offsets."""
    out, depth, start = [], 0, None
    for k, ch in enumerate(text):
        if ch == "(":
            if depth == 0:
                start = k + 1
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", column=offset + k + 1)
            if depth == 0:
                out.append((text[start:k], offset + start))
        elif depth == 0 and not ch.isspace():
            raise ParseError(f"unexpected {ch!r} outside parentheses", column=offset + k + 1)
    if depth:
        raise ParseError("unclosed '('", column=offset + len(text) + 1)
    return out


def _parse_int(text, offset, key):
    if not _INT.match(text):
        raise ParseError(f"{key} must be an integer, got {text.strip()!r}", column=offset + 1)
    return int(text)


def _parse_call(rest, offset, table, what):
    m = _CALL.match(rest)
    if m is None:
        raise ParseError(f"expected {what} tag(arguments)", column=offset + 1)
    tag = m.group("tag")
    if tag not in table:
        known = ", ".join(sorted(table))
        raise ParseError(f"unknown {what} {tag!r} (known: {known})", column=offset + 1)
    positional, keywords = table[tag][0], table[tag][1]
    args_off = offset + m.start("args")
    names, values = [], {}
    for piece, start in split_top_level(m.group("args"), ","):
        col = args_off + start
        if not piece.strip():
            if m.group("args").strip():
                raise ParseError("empty argument", column=col + 1)
            continue
        kw = _KEYWORD.match(piece)
        if kw:
            key = kw.group("key")
            kcol = col + kw.start("key") + 1
            if key not in keywords:
                raise ParseError(f"{tag} takes no keyword {key!r}", column=kcol)
            if key in values:
                raise ParseError(f"keyword {key!r} given twice", column=kcol)
            vcol = col + kw.start("value")
            if key == "n":
                values[key] = _parse_int(kw.group("value"), vcol, key)
            else:
                values[key] = parse_gaussrat(kw.group("value"), vcol)
        else:
            if values:
                raise ParseError("positional argument after keyword", column=col + 1)
            name = piece.strip()
            if not re.fullmatch(_NAME, name):
                raise ParseError(f"expected a name, got {name!r}", column=col + 1)
            names.append((name, col + len(piece) - len(piece.lstrip()) + 1))
    if len(names) != len(positional):
        raise ParseError(f"{tag} takes {len(positional)} positional argument(s), got {len(names)}",
                         column=offset + 1)
    missing = [k for k in keywords if k not in values]
    if missing:
        raise ParseError(f"{tag} is missing keyword(s) {', '.join(missing)}", column=offset + 1)
    return tag, names, values


def _parse_let(kind, rest, off):
    """Returns ``(refs, values)`` where refs are ``(name, column, expected kind)``."""
    if kind == "divisor":
        return [], {"divisor": parse_divisor(rest, off)}
    if kind == "torus":
        pairs = []
        for inner, start in _groups(rest, off):
            parts = split_top_level(inner, ",")
            if len(parts) != 2:
                raise ParseError("lattice vectors are pairs (lambda, mu)", column=start + 1)
            pairs.append(tuple(parse_gaussrat(p, start + s) for p, s in parts))
        return [], {"pairs": pairs}
    if kind == "kodaira":
        vals, pos = {}, 0
        for m in re.finditer(r"\S+", rest):
            kw = re.fullmatch(rf"({_NAME})=(.+)", m.group())
            col = off + m.start()
            if kw is None or kw.group(1) not in KODAIRA_KEYS:
                raise ParseError(f"expected one of {', '.join(KODAIRA_KEYS)} as key=value",
                                 column=col + 1)
            key, text = kw.group(1), kw.group(2)
            if key in vals:
                raise ParseError(f"{key} given twice", column=col + 1)
            vcol = col + len(key) + 1
            vals[key] = _parse_int(text, vcol, key) if key == "r" else parse_gaussrat(text, vcol)
            pos = m.end()
        missing = [k for k in KODAIRA_KEYS if k not in vals]
        if missing:
            raise ParseError(f"kodaira is missing {', '.join(missing)}", column=off + pos + 1)
        return [], vals
    if kind in ("structure", "morphism"):
        table = STRUCTURES if kind == "structure" else MORPHISMS
        tag, names, values = _parse_call(rest, off, table, kind)
        refs = [(n, c, k) for (n, c), k in zip(names, table[tag][0])]
        return refs, {"tag": tag, **values}
    if kind == "element":
        m = re.match(rf"({_NAME})\s*", rest)
        if m is None:
            raise ParseError("expected: element DIVISOR (t; f) or (t; mu; f)", column=off + 1)
        groups = _groups(rest[m.end():], off + m.end())
        if len(groups) != 1:
            raise ParseError("expected one parenthesized element", column=off + m.end() + 1)
        inner, start = groups[0]
        parts = split_top_level(inner, ";")
        if len(parts) not in (2, 3):
            raise ParseError("elements are (t; f) or (t; mu; f)", column=start + 1)
        values = {"t": parse_gaussrat(parts[0][0], start + parts[0][1]),
                  "f": parse_exppoly(parts[-1][0], start + parts[-1][1])}
        if len(parts) == 3:
            values["mu"] = parse_scalar(parts[1][0], start + parts[1][1])
        return [(m.group(1), off + 1, "divisor")], values
    if kind in ("conjugate", "compose"):
        names = list(re.finditer(r"\S+", rest))
        if len(names) != 2 or not all(re.fullmatch(_NAME, n.group()) for n in names):
            raise ParseError(f"expected: {kind} NAME NAME", column=off + 1)
        expected = ("structure", "element") if kind == "conjugate" else ("morphism", "morphism")
        return [(n.group(), off + n.start() + 1, e) for n, e in zip(names, expected)], {}
    raise AssertionError(kind)


def _parse_command(op, rest, off):
    words = list(re.finditer(r"\S+", rest))

    def names(expected):
        if len(words) != len(expected):
            raise ParseError(f"{op} takes {len(expected)} name(s)", column=off + 1)
        for w in words:
            if not re.fullmatch(_NAME, w.group()):
                raise ParseError(f"expected a name, got {w.group()!r}", column=off + w.start() + 1)
        return [(w.group(), off + w.start() + 1, e) for w, e in zip(words, expected)]

    if op == "verify":
        return names([("structure", "morphism")]), {}
    if op == "normal":
        return names(["structure"]), {}
    if op == "basis":
        return names(["divisor"]), {}
    if op == "mul":
        return names(["element", "element"]), {}
    if op == "moduli":
        if not words or words[0].group() not in ("gd", "gdp"):
            raise ParseError("expected: moduli gd|gdp DIVISOR", column=off + 1)
        which = words.pop(0).group()
        return names(["divisor"]), {"which": which}
    if op == "act":
        m = re.match(rf"\s*({_NAME})\s*", rest)
        if m is None:
            raise ParseError("expected: act ELEMENT (z, w)", column=off + 1)
        groups = _groups(rest[m.end():], off + m.end())
        if len(groups) != 1:
            raise ParseError("expected one point (z, w)", column=off + m.end() + 1)
        inner, start = groups[0]
        parts = split_top_level(inner, ",")
        if len(parts) != 2:
            raise ParseError("points are (z, w)", column=start + 1)
        point = SurfacePoint(parse_gaussrat(parts[0][0], start + parts[0][1]),
                             parse_scalar(parts[1][0], start + parts[1][1]))
        return [(m.group(1), off + m.start(1) + 1, "element")], {"point": point}
    raise ParseError(f"unknown command {op!r}", column=1)


def _result_type(st, env):
    kind = st.op
    if kind == "structure":
        return ("structure", STRUCTURES[st.values["tag"]][2])
    if kind == "element":
        return ("element", "gdp" if "mu" in st.values else "gd")
    if kind == "conjugate":
        return env[st.refs[0]]
    if kind == "compose":
        return ("morphism", None)
    return (kind, None)


def _check_types(st, env):
    refs = []
    for name, col, expected in st.raw_refs:
        if name not in env:
            raise UnboundName(name, st.line)
        got = env[name][0]
        allowed = expected if isinstance(expected, tuple) else (expected,)
        if got not in allowed:
            raise TypeMismatch(f"column {col}: {name} is a {got} but {' or '.join(allowed)} "
                               f"is expected", st.line)
        refs.append(name)
    if st.op == "conjugate" and env[refs[0]][1] != env[refs[1]][1]:
        raise TypeMismatch(f"{refs[1]} is a {env[refs[1]][1]} element but {refs[0]} is a "
                           f"{env[refs[0]][1]} structure", st.line)
    if st.op == "mul" and env[refs[0]][1] != env[refs[1]][1]:
        raise TypeMismatch("mul needs two elements of the same group", st.line)
    return tuple(refs)


def parse_spec(text):
    """Parse a whole program; raises the first ParseError, UnboundName or TypeMismatch."""
    statements, env = [], {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        body_s = body.strip()
        try:
            if body_s.startswith("let ") or body_s == "let":
                m = _LET.match(body_s)
                if m is None:
                    raise ParseError("expected: let NAME = KIND ...", column=indent + 1)
                kind = m.group("kind")
                if kind not in LET_KINDS:
                    raise ParseError(f"unknown definition kind {kind!r}",
                                     column=indent + m.start("kind") + 1)
                off = indent + m.start("rest")
                refs, values = _parse_let(kind, m.group("rest"), off)
                st = Statement(lineno, kind, m.group("name"), (), values, refs)
            else:
                op = body_s.split(None, 1)[0]
                if op not in COMMANDS:
                    raise ParseError(f"unknown command {op!r}", column=indent + 1)
                off = indent + len(op)
                refs, values = _parse_command(op, body_s[len(op):], off)
                st = Statement(lineno, op, None, (), values, refs)
        except ParseError as exc:
            raise ParseError(exc.message, lineno, exc.column) from None
        st.refs = _check_types(st, env)
        if st.name is not None:
            if st.name in env:
                raise ParseError(f"{st.name} is already bound", lineno, indent + 5)
            env[st.name] = _result_type(st, env)
        statements.append(st)
    return SpecProgram(statements, env)


# running ---------------------------------------------------------------------

class DependencyFailed(ExoticaError):
    pass


class _Emitter:
    def __init__(self, fmt):
        self.fmt = fmt
        self.lines = []

    def record(self, text, **fields):
        if self.fmt == "machine":
            self.lines.append(" ".join(f"{k}={shlex.quote(str(v))}" for k, v in fields.items()))
        else:
            self.lines.extend(text if isinstance(text, list) else [text])


def _build(st, values):
    v = st.values
    refs = [values[r] for r in st.refs]
    op = st.op
    if op == "divisor":
        return v["divisor"]
    if op == "torus":
        return TorusLattice(v["pairs"])
    if op == "kodaira":
        return KodairaGroup(**v)
    if op == "structure":
        _, keywords, _, builder = STRUCTURES[v["tag"]]
        return builder(*refs, *(v[k] for k in keywords))
    if op == "morphism":
        _, keywords = MORPHISMS[v["tag"]]
        return CATALOG[v["tag"]](*refs, *(v[k] for k in keywords))
    if op == "element":
        if "mu" in v:
            return GdpElement(refs[0], v["t"], v["mu"], v["f"])
        return GdElement(refs[0], v["t"], v["f"])
    if op == "conjugate":
        return conjugate_system(*refs)
    if op == "compose":
        return compose_inducing(*refs)
    raise AssertionError(op)


def run_spec(program, fmt="text", seed=0, samples=5, echo=True):
    """Execute a parsed program; exit code 0 all checks pass, 1 a check failed,
    2 a validation error occurred."""
    rng = random.Random(seed)
    out = _Emitter(fmt)
    values, failed = {}, set()
    any_fail = any_error = False
    for st in program.statements:
        bad = [r for r in st.refs if r in failed]
        try:
            if bad:
                raise DependencyFailed(f"{', '.join(bad)} failed to build")
            if st.name is not None:
                obj = _build(st, values)
                values[st.name] = obj
                if echo:
                    out.record(f"{st.name} = {obj}", line=st.line, let=st.name,
                               kind=st.op, value=obj)
                continue
            refs = [values[r] for r in st.refs]
            if st.op == "verify":
                target = refs[0]
                if program.types[st.refs[0]][0] == "structure":
                    report = verify_developing_system(target)
                else:
                    report = verify_inducing(target, samples=samples, rng=rng)
                status = "PASS" if report.passed else "FAIL"
                any_fail |= not report.passed
                if fmt == "machine":
                    for c in report.checks:
                        fields = dict(line=st.line, verify=st.refs[0], check=c.name,
                                      status="PASS" if c.passed else "FAIL")
                        if c.witness:
                            fields["witness"] = c.witness
                        out.record("", **fields)
                out.record(report.text_lines() + [f"verify {st.refs[0]}: {status}"],
                           line=st.line, verify=st.refs[0], result=status)
            elif st.op == "normal":
                nf = normal_form(refs[0])
                out.record(f"normal {st.refs[0]}: {nf}", line=st.line, normal=st.refs[0],
                           tag=nf.tag, value=str(nf))
            elif st.op == "moduli":
                which = st.values["which"]
                desc = (moduli_gdp_torus if which == "gdp" else moduli_gd_torus)(refs[0])
                out.record(str(desc), line=st.line, moduli=which, divisor=st.refs[0],
                           value=str(desc))
            elif st.op == "basis":
                text = ", ".join(str(b) for b in vd_basis(refs[0]))
                out.record(text, line=st.line, basis=st.refs[0], value=text)
            elif st.op == "act":
                p = refs[0](st.values["point"])
                out.record(str(p), line=st.line, act=st.refs[0], value=str(p))
            elif st.op == "mul":
                g = refs[0] * refs[1]
                out.record(str(g), line=st.line, mul=" ".join(st.refs), value=str(g))
        except (ExoticaError, ArithmeticError, ValueError) as exc:
            any_error = True
            if st.name is not None:
                failed.add(st.name)
            code = getattr(exc, "code", type(exc).__name__)
            out.record(f"error={code} line={st.line}: {exc}", line=st.line,
                       error=code, message=str(exc))
    code = 2 if any_error else 1 if any_fail else 0
    if fmt == "machine":
        out.record("", exit=code)
    return RunResult(code, out.lines)
