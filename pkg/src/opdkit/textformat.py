"""Line-oriented text format for categories, operads, bounded symmetric
monoidal categories and their pinned variants.

One model per file. Lines hold whitespace-separated tokens, ``#`` starts a
comment, and every line opens with a keyword::

    category C
    objects: a b
    arrow f: a -> b
    compose g f = h

    operad P arity 3
    colours: a b
    op m: ( a a ) -> a
    subst m [ m id ( a ) ] = m3
    act m perm 2 1 = m'

    smc M bound 2
    colours: a
    mor u: ( a ) -> ( a a )
    compose v u = w
    tensor u id ( a ) = t
    sym perm 2 1 on ( a a ) = s

    pinned T          # a category block, an smc block, then pin lines
    substitude S      # a category block, an operad block, then pin lines
    pin f = u

Identities and units are written ``id ( c ... )`` and are never declared.
Entries involving only identities are inferred; omitted symmetry or action
entries are filled in only when the target hom set is a singleton.
"""

import re
from dataclasses import dataclass, field
from itertools import permutations

from .errors import InputError
from .fincat import FinCategory, validate_category
from .operad import (
    FinOperad, PinnedOperad, Substitude, TableOperad, _inner_choices, make_pin_map,
    validate_operad,
)
from .permcore import identity_images, permute
from .report import CheckReport
from .smc import (
    BoundedSMC, PinnedSMC, TableIncomplete, TableSMC, ValidationError, check_pin, tau_consistency,
    validate_smc,
)

__all__ = [
    "ModelFile", "ParseError", "ModelReferenceError", "ValidationError",
    "parse_model", "print_model", "validate_model",
]

KINDS = ("category", "operad", "smc", "pinned", "substitude")

_TOKEN = re.compile(r"->|[()\[\]:=]|[^\s()\[\]:=#]+")
_SAFE = re.compile(r"[^\s()\[\]:=#]+")
_PUNCT = {"->", "(", ")", "[", "]", ":", "="}


class ParseError(InputError):
    """Lexical or syntax error with a position and the expected tokens."""

    def __init__(self, message, line, col, expected=()):
        self.line, self.col = line, col
        self.expected = tuple(sorted(set(expected)))
        text = f"line {line}, column {col}: {message}"
        if self.expected:
            text += f" (expected {' or '.join(self.expected)})"
        super().__init__(text)


class ModelReferenceError(InputError):
    """An identifier that does not resolve, or an entry whose endpoints do
    not fit."""

    def __init__(self, message, line, col):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass
class ModelFile:
    kind: str
    name: str
    bounds: dict = field(default_factory=dict)
    structure: object = None


# ----------------------------------------------------------------------------
# lexing


class _Token:
    __slots__ = ("text", "line", "col")

    def __init__(self, text, line, col):
        self.text, self.line, self.col = text, line, col

    @property
    def is_word(self):
        return self.text not in _PUNCT


class _Line:
    def __init__(self, number, tokens, end_col):
        self.number = number
        self.tokens = tokens
        self.pos = 0
        self.end_col = end_col

    @property
    def keyword(self):
        return self.tokens[0].text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message, expected=()):
        tok = self.peek()
        col = tok.col if tok else self.end_col
        found = f"{tok.text!r}" if tok else "end of line"
        raise ParseError(f"{message}, found {found}", self.number, col, expected)

    def expect(self, text):
        tok = self.peek()
        if tok is None or tok.text != text:
            self.error("unexpected token", [repr(text)])
        self.pos += 1
        return tok

    def word(self, what="identifier"):
        tok = self.peek()
        if tok is None or not tok.is_word:
            self.error("unexpected token", [what])
        self.pos += 1
        return tok

    def number_token(self, what="integer"):
        tok = self.word(what)
        if not tok.text.isdigit():
            raise ParseError(f"{what} must be a non-negative integer, found {tok.text!r}",
                             self.number, tok.col, [what])
        return int(tok.text), tok

    def words_until(self, closer):
        out = []
        while True:
            tok = self.peek()
            if tok is not None and tok.text == closer:
                self.pos += 1
                return out
            if tok is None or not tok.is_word:
                self.error("unexpected token", ["identifier", repr(closer)])
            out.append(tok)
            self.pos += 1

    def seq(self):
        """``( w ... )`` as a list of tokens."""
        self.expect("(")
        return self.words_until(")")

    def at(self, text):
        tok = self.peek()
        return tok is not None and tok.text == text

    def end(self):
        if self.peek() is not None:
            self.error("trailing input", ["end of line"])


def _lex(text):
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens = [_Token(m.group(), number, m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            lines.append(_Line(number, tokens, len(body.rstrip()) + 1))
    return lines


# ----------------------------------------------------------------------------
# parsing


def _digits(line):
    toks = []
    while line.peek() is not None and line.peek().text.isdigit():
        toks.append(line.word())
    return toks


def _check_perm(line, toks, n):
    images = tuple(int(t.text) for t in toks)
    if sorted(images) != list(range(1, n + 1)):
        col = toks[0].col if toks else line.peek().col if line.peek() else line.end_col
        raise ParseError(f"not a permutation of 1..{n}: {list(images)}", line.number, col,
                         [f"permutation of 1..{n}"])
    return images


def _ref_error(tok, message):
    raise ModelReferenceError(message, tok.line, tok.col)


class _Parser:
    def __init__(self, lines):
        self.lines = lines
        self.i = 0

    def peek(self):
        return self.lines[self.i] if self.i < len(self.lines) else None

    def take(self, keyword, expected=None):
        line = self.peek()
        if line is None:
            last = self.lines[-1] if self.lines else None
            n = last.number + 1 if last else 1
            raise ParseError("unexpected end of input", n, 1, expected or [keyword])
        if line.keyword != keyword:
            line.error("unexpected keyword", expected or [keyword])
        self.i += 1
        line.pos = 1
        return line

    def next_is(self, *keywords):
        line = self.peek()
        return line is not None and line.keyword in keywords

    def header(self, keyword, bound_word=None):
        line = self.take(keyword)
        name = line.word("name").text
        bound = None
        if bound_word is not None:
            line.expect(bound_word)
            bound, _ = line.number_token(bound_word)
        line.end()
        return line, name, bound

    def names_line(self, keyword):
        line = self.take(keyword)
        line.expect(":")
        toks = []
        while line.peek() is not None:
            toks.append(line.word())
        seen = set()
        for tok in toks:
            if tok.text == "id":
                _ref_error(tok, "'id' is reserved")
            if tok.text in seen:
                _ref_error(tok, f"duplicate name {tok.text!r}")
            seen.add(tok.text)
        return [t.text for t in toks]

    # --- category -----------------------------------------------------------

    def category(self):
        _, name, _ = self.header("category")
        objects = self.names_line("objects")
        obj_set = set(objects)
        arrows = {("id", x): (x, x) for x in objects}
        identity = {x: ("id", x) for x in objects}
        compose = {}

        def obj(tok):
            if tok.text not in obj_set:
                _ref_error(tok, f"unknown object {tok.text!r}")
            return tok.text

        def ref(line):
            if line.at("id"):
                line.pos += 1
                toks = line.seq()
                if len(toks) != 1:
                    line.error("an identity names one object", ["object"])
                return ("id", obj(toks[0])), toks[0]
            tok = line.word("arrow")
            if tok.text not in arrows:
                _ref_error(tok, f"unknown arrow {tok.text!r}")
            return tok.text, tok

        while self.next_is("arrow", "compose"):
            if self.peek().keyword == "arrow":
                line = self.take("arrow")
                tok = line.word("arrow")
                if tok.text == "id" or tok.text in arrows:
                    _ref_error(tok, f"arrow name {tok.text!r} is reserved or already used")
                line.expect(":")
                d = obj(line.word("object"))
                line.expect("->")
                c = obj(line.word("object"))
                line.end()
                arrows[tok.text] = (d, c)
            else:
                line = self.take("compose")
                g, gt = ref(line)
                f, _ = ref(line)
                line.expect("=")
                h, ht = ref(line)
                line.end()
                if arrows[f][1] != arrows[g][0]:
                    _ref_error(gt, f"cannot compose {g!r} after {f!r}: codomain "
                                   f"{arrows[f][1]!r} is not domain {arrows[g][0]!r}")
                if arrows[h] != (arrows[f][0], arrows[g][1]):
                    _ref_error(ht, f"composite {h!r} of ({g!r}, {f!r}) has the wrong endpoints")
                if compose.get((g, f), h) != h:
                    _ref_error(gt, f"composite of ({g!r}, {f!r}) given twice")
                compose[(g, f)] = h
        cat = FinCategory(objects, arrows, identity, compose, name)
        cat.fill_identity_composites()
        return cat

    # --- operad -------------------------------------------------------------

    def operad(self):
        _, name, arity = self.header("operad", "arity")
        colours = self.names_line("colours")
        col_set = set(colours)
        ops = {}
        subst, act = {}, {}

        def colour(tok):
            if tok.text not in col_set:
                _ref_error(tok, f"unknown colour {tok.text!r}")
            return tok.text

        def profile(op):
            if isinstance(op, tuple):
                return (op[1],), op[1]
            return ops[op]

        def ref(line):
            if line.at("id"):
                line.pos += 1
                toks = line.seq()
                if len(toks) != 1:
                    line.error("a unit names one colour", ["colour"])
                return ("id", colour(toks[0])), toks[0]
            tok = line.word("operation")
            if tok.text not in ops:
                _ref_error(tok, f"unknown operation {tok.text!r}")
            return tok.text, tok

        while self.next_is("op", "subst", "act"):
            kw = self.peek().keyword
            line = self.take(kw)
            if kw == "op":
                tok = line.word("operation")
                if tok.text == "id" or tok.text in ops:
                    _ref_error(tok, f"operation name {tok.text!r} is reserved or already used")
                line.expect(":")
                ins = tuple(colour(t) for t in line.seq())
                line.expect("->")
                out = colour(line.word("colour"))
                line.end()
                if len(ins) > arity:
                    _ref_error(tok, f"operation {tok.text!r} exceeds the arity bound {arity}")
                ops[tok.text] = (ins, out)
            elif kw == "subst":
                outer, otok = ref(line)
                line.expect("[")
                inners = []
                while not line.at("]"):
                    if line.peek() is None:
                        line.error("unterminated inner list", ["operation", "']'"])
                    inners.append(ref(line)[0])
                line.pos += 1
                line.expect("=")
                res, rtok = ref(line)
                line.end()
                ins, out = profile(outer)
                if len(inners) != len(ins):
                    _ref_error(otok, f"{outer!r} takes {len(ins)} inputs, given {len(inners)}")
                for k, op in enumerate(inners):
                    if profile(op)[1] != ins[k]:
                        _ref_error(otok, f"inner {k + 1} of {outer!r} has the wrong output colour")
                composite = (sum((profile(op)[0] for op in inners), ()), out)
                if profile(res) != composite:
                    _ref_error(rtok, f"result {res!r} has the wrong profile")
                if len(composite[0]) > arity:
                    _ref_error(rtok, "substitution exceeds the arity bound")
                subst[(outer, tuple(inners))] = res
            else:
                op, otok = ref(line)
                line.expect("perm")
                rho = self.perm(line, len(profile(op)[0]))
                line.expect("=")
                res, rtok = ref(line)
                line.end()
                ins, out = profile(op)
                if profile(res) != (tuple(ins[r - 1] for r in rho), out):
                    _ref_error(rtok, f"result {res!r} has the wrong profile")
                act[(op, rho)] = res
        return TableOperad(colours, arity, ops, subst, act, name).complete_forced()

    def perm(self, line, n):
        return _check_perm(line, _digits(line), n)

    # --- smc ----------------------------------------------------------------

    def smc(self):
        _, name, bound = self.header("smc", "bound")
        colours = self.names_line("colours")
        col_set = set(colours)
        mors, compose, tensor, sym = {}, {}, {}, {}

        def seq(line):
            toks = line.seq()
            for t in toks:
                if t.text not in col_set:
                    _ref_error(t, f"unknown colour {t.text!r}")
            x = tuple(t.text for t in toks)
            if len(x) > bound:
                _ref_error(toks[0], f"sequence of length {len(x)} exceeds the bound {bound}")
            return x

        def ends(u):
            if isinstance(u, tuple):
                return u[1], u[1]
            return mors[u]

        def ref(line):
            if line.at("id"):
                line.pos += 1
                tok = line.peek()
                return ("id", seq(line)), tok
            tok = line.word("morphism")
            if tok.text not in mors:
                _ref_error(tok, f"unknown morphism {tok.text!r}")
            return tok.text, tok

        while self.next_is("mor", "compose", "tensor", "sym"):
            kw = self.peek().keyword
            line = self.take(kw)
            if kw == "mor":
                tok = line.word("morphism")
                if tok.text == "id" or tok.text in mors:
                    _ref_error(tok, f"morphism name {tok.text!r} is reserved or already used")
                line.expect(":")
                d = seq(line)
                line.expect("->")
                c = seq(line)
                line.end()
                mors[tok.text] = (d, c)
            elif kw in ("compose", "tensor"):
                g, gt = ref(line)
                f, _ = ref(line)
                line.expect("=")
                h, ht = ref(line)
                line.end()
                if kw == "compose":
                    if ends(f)[1] != ends(g)[0]:
                        _ref_error(gt, f"cannot compose {g!r} after {f!r}")
                    expect = (ends(f)[0], ends(g)[1])
                else:
                    expect = (ends(g)[0] + ends(f)[0], ends(g)[1] + ends(f)[1])
                if ends(h) != expect:
                    _ref_error(ht, f"result {h!r} has the wrong endpoints")
                (compose if kw == "compose" else tensor)[(g, f)] = h
            else:
                line.expect("perm")
                toks = _digits(line)
                line.expect("on")
                x = seq(line)
                rho = _check_perm(line, toks, len(x))
                line.expect("=")
                res, rtok = ref(line)
                line.end()
                if ends(res) != (x, permute(rho, x)):
                    _ref_error(rtok, f"result {res!r} has the wrong endpoints")
                sym[(rho, x)] = res
        return TableSMC(colours, bound, mors, compose, tensor, sym, name).complete_forced()

    # --- pinned structures --------------------------------------------------

    def pins(self, source_ref, target_ref):
        pins = {}
        while self.next_is("pin"):
            line = self.take("pin")
            a, atok = source_ref(line)
            line.expect("=")
            u, _ = target_ref(line)
            line.end()
            if a in pins:
                _ref_error(atok, f"arrow {a!r} pinned twice")
            pins[a] = u
        return pins

    def pinned(self):
        _, name, _ = self.header("pinned")
        C = self.category()
        M = self.smc()
        pins = self.pins(self._arrow_ref(C), self._mor_ref(M))
        for x in C.objects:
            pins.setdefault(C.identity[x], M.identity((x,)))
        return PinnedSMC(C, M, pins, name)

    def substitude(self):
        _, name, _ = self.header("substitude")
        C = self.category()
        P = self.operad()
        pins = self.pins(self._arrow_ref(C), self._op_ref(P))
        for x in C.objects:
            if x not in P.colours:
                raise ModelReferenceError(f"object {x!r} is not a colour", 1, 1)
            pins.setdefault(C.identity[x], P.unit(x))
        missing = [a for a in C.arrows if a not in pins]
        if missing:
            raise ModelReferenceError(f"arrow {missing[0]!r} is not pinned",
                                      self.lines[-1].number, 1)
        return Substitude(C, P, make_pin_map(C, P, pins), name)

    def _arrow_ref(self, C):
        def ref(line):
            if line.at("id"):
                line.pos += 1
                toks = line.seq()
                if len(toks) != 1 or toks[0].text not in C.identity:
                    _ref_error(line.tokens[line.pos - 1], "unknown identity")
                return C.identity[toks[0].text], toks[0]
            tok = line.word("arrow")
            if tok.text not in C.arrows:
                _ref_error(tok, f"unknown arrow {tok.text!r}")
            return tok.text, tok
        return ref

    def _op_ref(self, P):
        def ref(line):
            if line.at("id"):
                line.pos += 1
                toks = line.seq()
                if len(toks) != 1 or toks[0].text not in P.colours:
                    _ref_error(line.tokens[line.pos - 1], "unknown unit")
                return P.unit(toks[0].text), toks[0]
            tok = line.word("operation")
            if tok.text not in P.op_table:
                _ref_error(tok, f"unknown operation {tok.text!r}")
            return tok.text, tok
        return ref

    def _mor_ref(self, M):
        def ref(line):
            if line.at("id"):
                line.pos += 1
                toks = line.seq()
                x = tuple(t.text for t in toks)
                if any(c not in M.colours for c in x):
                    _ref_error(line.tokens[line.pos - 1], "unknown colour in identity")
                return M.identity(x), line.tokens[line.pos - 1]
            tok = line.word("morphism")
            if tok.text not in M.mors:
                _ref_error(tok, f"unknown morphism {tok.text!r}")
            return tok.text, tok
        return ref


def parse_model(text, validate=True):
    """Parse one model. With ``validate`` the structure is also passed
    through its validator and ``ValidationError`` raised on failure."""
    lines = _lex(text)
    if not lines:
        raise ParseError("empty model", 1, 1, KINDS)
    p = _Parser(lines)
    kind = lines[0].keyword
    if kind not in KINDS:
        lines[0].error("unknown model kind", KINDS)
    structure = getattr(p, kind)()
    if p.peek() is not None:
        allowed = {
            "category": ["arrow", "compose"],
            "operad": ["op", "subst", "act"],
            "smc": ["mor", "compose", "tensor", "sym"],
            "pinned": ["pin"],
            "substitude": ["pin"],
        }[kind]
        line = p.peek()
        raise ParseError(f"unexpected keyword {line.keyword!r}", line.number,
                         line.tokens[0].col, allowed + ["end of input"])
    model = ModelFile(kind, lines[0].tokens[1].text, _bounds(kind, structure), structure)
    if validate:
        report = validate_model(model)
        if not report.verdict:
            raise ValidationError(f"{kind} {model.name} is not valid", report.witness)
    return model


def _bounds(kind, s):
    if kind == "operad":
        return {"arity": s.arity_bound}
    if kind == "smc":
        return {"bound": s.bound}
    if kind == "pinned":
        return {"bound": s.bound}
    if kind == "substitude":
        return {"arity": s.body.arity_bound}
    return {}


def validate_model(model):
    """Run the validator matching the model kind."""
    s = model.structure
    if model.kind == "category":
        return validate_category(s)
    if model.kind == "operad":
        return validate_operad(s)
    if model.kind == "smc":
        return validate_smc(s)
    if model.kind == "pinned":
        rep = validate_category(s.base)
        if not rep.verdict:
            return rep
        rep = validate_smc(s.target)
        if not rep.verdict:
            return rep
        try:
            check_pin(s.base, s.target, s.arrow_pin)
        except ValidationError as exc:
            return CheckReport("pinned", False, s.bound, witness=exc.witness or str(exc))
        return tau_consistency(s, 2)
    rep = validate_category(s.pins)
    if not rep.verdict:
        return rep
    rep = validate_operad(s.body)
    if not rep.verdict:
        return rep
    return s.validate()


# ----------------------------------------------------------------------------
# printing


def _safe(x):
    return isinstance(x, str) and x != "id" and x != "->" and _SAFE.fullmatch(x) is not None


def _names(items, prefix):
    items = list(items)
    if all(_safe(x) for x in items) and len(set(items)) == len(items):
        return {x: x for x in items}
    return {x: f"{prefix}{k}" for k, x in enumerate(items, 1)}


def _model_name(name):
    name = re.sub(r"[\s()\[\]:=#]+", "_", str(name)).strip("_")
    return name if name and name != "->" else "M"


def _category_lines(C, obj):
    ident = {a for a in C.identity.values()}
    plain = [a for a in C.arrows if a not in ident]
    arr = _names(plain, "a")
    inv_identity = {a: x for x, a in C.identity.items()}

    def ref(a):
        return f"id ( {obj[inv_identity[a]]} )" if a in ident else arr[a]

    out = [f"category {_model_name(C.name)}",
           "objects: " + " ".join(obj[x] for x in C.objects) if C.objects else "objects:"]
    for a in plain:
        d, c = C.arrows[a]
        out.append(f"arrow {arr[a]}: {obj[d]} -> {obj[c]}")
    for f in plain:
        for g in plain:
            if (g, f) in C.compose:
                out.append(f"compose {arr[g]} {arr[f]} = {ref(C.compose[(g, f)])}")
    return out, ref


def _seq(obj, x):
    return "( " + "".join(obj[c] + " " for c in x) + ")"


def _operad_lines(P, obj):
    A = P.arity_bound
    units = {P.unit(c): c for c in P.colours}
    plain = [op for op in P.all_ops(A) if op not in units]
    names = _names(plain, "o")

    def ref(op):
        return f"id ( {obj[units[op]]} )" if op in units else names[op]

    out = [f"operad {_model_name(P.name)} arity {A}",
           "colours: " + " ".join(obj[c] for c in P.colours) if P.colours else "colours:"]
    for op in plain:
        ins, o = P.profile(op)
        out.append(f"op {names[op]}: {_seq(obj, ins)} -> {obj[o]}")
    for op in plain:
        ins, _ = P.profile(op)
        if not ins:
            continue
        for inners in _inner_choices(P, ins, A):
            if all(i in units for i in inners):
                continue
            res = P.subst(op, inners)
            if res is None:
                continue
            out.append(f"subst {names[op]} [ {' '.join(ref(i) for i in inners)} ] = {ref(res)}")
    for op in plain:
        n = len(P.profile(op)[0])
        for rho in permutations(range(1, n + 1)):
            if rho == identity_images(n):
                continue
            try:
                image = P.act(op, rho)
            except TableIncomplete:
                # partial tables print as given so that validation can name the gap
                continue
            perm = " ".join(map(str, rho))
            out.append(f"act {names[op]} perm {perm} = {ref(image)}")
    return out, ref


def _smc_lines(M, obj):
    objects = M.objects()
    plain, is_id = [], set()
    for x in objects:
        ident = M.identity(x)
        is_id.add(ident)
        for y in objects:
            for u in M.hom(x, y):
                if not (x == y and u == ident):
                    plain.append(u)
    names = _names(plain, "m")

    def ref(u):
        if u in is_id:
            return "id " + _seq(obj, M.dom(u))
        return names[u]

    out = [f"smc {_model_name(M.name)} bound {M.bound}",
           "colours: " + " ".join(obj[c] for c in M.colours) if M.colours else "colours:"]
    for u in plain:
        out.append(f"mor {names[u]}: {_seq(obj, M.dom(u))} -> {_seq(obj, M.cod(u))}")
    by_dom = {}
    for u in plain:
        by_dom.setdefault(M.dom(u), []).append(u)
    for f in plain:
        for g in by_dom.get(M.cod(f), ()):
            out.append(f"compose {names[g]} {names[f]} = {ref(M.compose(g, f))}")
    every = [M.identity(x) for x in objects] + plain
    for u in every:
        for v in every:
            if u in is_id and v in is_id:
                continue
            if (u in is_id and not M.dom(u)) or (v in is_id and not M.dom(v)):
                continue
            t = M.tensor(u, v)
            if t is None:
                continue
            out.append(f"tensor {ref(u)} {ref(v)} = {ref(t)}")
    for x in objects:
        for rho in permutations(range(1, len(x) + 1)):
            if rho == identity_images(len(x)):
                continue
            perm = " ".join(map(str, rho))
            out.append(f"sym perm {perm} on {_seq(obj, x)} = {ref(M.sym(rho, x))}")
    return out, ref


def print_model(obj):
    """Canonical text of a category, operad, bounded SMC, pinned SMC or
    pinned operad."""
    if isinstance(obj, ModelFile):
        obj = obj.structure
    if isinstance(obj, FinCategory):
        lines, _ = _category_lines(obj, _names(obj.objects, "x"))
    elif isinstance(obj, FinOperad):
        lines, _ = _operad_lines(obj, _names(obj.colours, "c"))
    elif isinstance(obj, BoundedSMC):
        lines, _ = _smc_lines(obj, _names(obj.colours, "c"))
    elif isinstance(obj, PinnedSMC):
        names = _names(obj.base.objects, "x")
        cat, aref = _category_lines(obj.base, names)
        body, mref = _smc_lines(obj.target, names)
        ident = set(obj.base.identity.values())
        pins = [f"pin {aref(a)} = {mref(obj.arrow_pin[a])}"
                for a in obj.base.arrows if a not in ident]
        lines = [f"pinned {_model_name(obj.name)}"] + cat + body + pins
    elif isinstance(obj, PinnedOperad):
        if not isinstance(obj, Substitude) and not obj.phi.is_identity_on_objects():
            raise InputError("only substitudes have a text form")
        names = _names(obj.pins.objects, "x")
        cat, aref = _category_lines(obj.pins, names)
        body, oref = _operad_lines(obj.body, names)
        ident = set(obj.pins.identity.values())
        pins = [f"pin {aref(a)} = {oref(obj.phi(a))}"
                for a in obj.pins.arrows if a not in ident]
        lines = [f"substitude {_model_name(obj.name)}"] + cat + body + pins
    else:
        raise InputError(f"no text form for {type(obj).__name__}")
    return "\n".join(lines) + "\n"
