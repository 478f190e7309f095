"""Text format for algebra declarations.

Line-oriented, UTF-8, ``#`` comments.  A file is a sequence of blocks::

    semiring B2
      elements O I
      zero O
      one I
      add
        O I
        I I
      mul
        O O
        O I
    end

    semimodule C3 over B2
      elements o m t
      zero o
      add
        ...rows...
      act
        ...one row per semiring element...
    end

    monoid UT on UTm          # likewise: lie ... on ..., with `bracket`
      unit a+c
      mult
        ...rows...
    end

    hopf X2 on X2m            # bimonoid: the same without `antipode`
      unit 1
      mult
        ...rows...
      counit 0 1 0 1          # one semiring element name per carrier element
      comult
        0 = 0.0               # '+'-separated pure tensors a.b, optional s*a.b
        x = x.1 + 1.x
      antipode 0 1 x 1+x
    end

Names are declared in order and map to indices; all output uses names.  The
parser validates structure (shapes, ranges, references); equational laws are
the job of ``check laws``, except that a comonoid-bearing block needs a
lawful carrier to build its tensor square, which is checked on the spot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SemihopfError
from .report import ValidationReport
from .semiring import DEFAULT_CAP, FiniteSemiring
from .semimodule import FinSemimodule, Hom, TableSemimodule, check_semimodule
from .tensor import Bimorphism, tensor
from .monoidal import BimonoidObject, ComonoidObject, HopfObject, MonoidObject
from .lie import LieObject
from .semimodule import unit_module


class AlgSyntaxError(SemihopfError):
    def __init__(self, line: int, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}")


class AlgReferenceError(SemihopfError):
    def __init__(self, line: int, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}")


class AlgDimensionError(SemihopfError):
    def __init__(self, line: int, block: str, msg: str):
        self.line = line
        self.block = block
        super().__init__(f"line {line}: block {block}: {msg}")


class AlgLawError(SemihopfError):
    """A declared carrier violates its laws where the parser must rely on them."""

    def __init__(self, block: str, report: ValidationReport):
        self.block = block
        self.report = report
        super().__init__(f"block {block} carrier violates its laws:\n{report}")


_KEYWORDS = {
    "elements", "zero", "one", "unit", "add", "mul", "act", "mult",
    "bracket", "counit", "comult", "antipode", "end",
    "semiring", "semimodule", "monoid", "comonoid", "bimonoid", "hopf", "lie",
    "over", "on",
}

_HEADERS = ("semiring", "semimodule", "monoid", "comonoid", "bimonoid", "hopf", "lie")


def _check_name(name: str, line: int) -> str:
    if name in _KEYWORDS:
        raise AlgSyntaxError(line, f"{name!r} is a reserved word")
    if any(ch in name for ch in ".*=#") or not name:
        raise AlgSyntaxError(line, f"name {name!r} may not contain '.', '*', '=' or '#'")
    return name


@dataclass
class Block:
    kind: str
    name: str
    ref: str | None  # base semiring / carrier module name
    obj: object


@dataclass
class AlgebraFile:
    blocks: list[Block] = field(default_factory=list)

    def lookup(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(name)

    def names(self) -> list[str]:
        return [b.name for b in self.blocks]

    def merged_with(self, other: "AlgebraFile") -> "AlgebraFile":
        seen = set(self.names())
        clash = [b.name for b in other.blocks if b.name in seen]
        if clash:
            raise AlgReferenceError(0, f"duplicate declarations: {', '.join(sorted(clash))}")
        return AlgebraFile(self.blocks + other.blocks)


class _Lines:
    def __init__(self, text: str):
        self.rows = []
        for i, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].rstrip()
            if body.strip():
                self.rows.append((i, body))
        self.pos = 0

    def peek(self):
        return self.rows[self.pos] if self.pos < len(self.rows) else None

    def take(self):
        row = self.peek()
        if row is not None:
            self.pos += 1
        return row


def _parse_table(lines: _Lines, n_rows: int, names: dict[str, int], block: str,
                 row_len: int) -> list[list[int]]:
    out = []
    for _ in range(n_rows):
        row = lines.peek()
        if row is None or row[1].split()[0] in _KEYWORDS:
            line = row[0] if row else 0
            raise AlgDimensionError(line, block, f"expected {n_rows} table rows, got {len(out)}")
        lines.take()
        toks = row[1].split()
        if len(toks) != row_len:
            raise AlgDimensionError(row[0], block, f"row has {len(toks)} entries, expected {row_len}")
        try:
            out.append([names[t] for t in toks])
        except KeyError as exc:
            raise AlgReferenceError(row[0], f"unknown element name {exc.args[0]!r} in block {block}") from None
    return out


def _parse_sections(lines: _Lines, block: str):
    """Collect the raw sections of one block up to 'end'."""
    sections: dict[str, object] = {}
    order: list[str] = []
    while True:
        row = lines.take()
        if row is None:
            raise AlgSyntaxError(0, f"block {block} not closed by 'end'")
        line, body = row
        toks = body.split()
        key = toks[0]
        if key == "end":
            return sections, order
        if key not in _KEYWORDS or key in _HEADERS:
            raise AlgSyntaxError(line, f"unexpected {key!r} inside block {block}")
        if key in sections:
            raise AlgSyntaxError(line, f"duplicate section {key!r} in block {block}")
        order.append(key)
        if key in ("add", "mul", "act", "mult", "bracket", "comult"):
            sections[key] = (line, None)  # table/assignment sections parse later
            rows = []
            while True:
                nxt = lines.peek()
                if nxt is None:
                    raise AlgSyntaxError(line, f"block {block} not closed by 'end'")
                if nxt[1].split()[0] in _KEYWORDS:
                    break
                rows.append(lines.take())
            sections[key] = (line, rows)
        else:
            sections[key] = (line, toks[1:])


def _resolve(af: AlgebraFile, name: str, kinds: tuple[str, ...], line: int) -> Block:
    try:
        block = af.lookup(name)
    except KeyError:
        raise AlgReferenceError(line, f"reference to undeclared name {name!r}") from None
    if block.kind not in kinds:
        raise AlgReferenceError(line, f"{name!r} is a {block.kind}, expected one of {kinds}")
    return block


def _module_names(mod: FinSemimodule) -> dict[str, int]:
    return {mod.names[i]: i for i in range(mod.size)}


def _require(sections, order, keys, block, line):
    missing = [k for k in keys if k not in sections]
    if missing:
        raise AlgSyntaxError(line, f"block {block} is missing sections: {', '.join(missing)}")
    extra = [k for k in order if k not in keys]
    if extra:
        raise AlgSyntaxError(sections[extra[0]][0], f"block {block} has unexpected sections: {', '.join(extra)}")


def _single_name(sections, key, block, names):
    line, toks = sections[key]
    if len(toks) != 1:
        raise AlgSyntaxError(line, f"{key} in block {block} takes exactly one name")
    if toks[0] not in names:
        raise AlgReferenceError(line, f"unknown element name {toks[0]!r} in block {block}")
    return names[toks[0]]


def _parse_comult_rows(rows, carrier, square, base_names, names, block):
    images = {}
    for line, body in rows:
        if "=" not in body:
            raise AlgSyntaxError(line, f"comult row in block {block} must be 'name = terms'")
        lhs, rhs = body.split("=", 1)
        lhs = lhs.strip()
        if lhs not in names:
            raise AlgReferenceError(line, f"unknown element name {lhs!r} in block {block}")
        acc = square.object.zero
        for term in rhs.strip().split(" + "):
            term = term.strip()
            if not term:
                raise AlgSyntaxError(line, f"empty comult term in block {block}")
            scalar = None
            if "*" in term:
                s_name, term = term.split("*", 1)
                if s_name not in base_names:
                    raise AlgReferenceError(line, f"unknown scalar name {s_name!r} in block {block}")
                scalar = base_names[s_name]
            if term.count(".") != 1:
                raise AlgSyntaxError(line, f"comult term {term!r} must be 'a.b'")
            a_name, b_name = term.split(".")
            if a_name not in names or b_name not in names:
                raise AlgReferenceError(line, f"unknown element in comult term {term!r}")
            val = square.univ(names[a_name], names[b_name])
            if scalar is not None:
                val = square.object.act(scalar, val)
            acc = square.object.add(acc, val)
        images[names[lhs]] = acc
    missing = [carrier.names[i] for i in range(carrier.size) if i not in images]
    if missing:
        raise AlgDimensionError(rows[0][0] if rows else 0, block,
                                f"comult missing rows for: {', '.join(missing)}")
    return tuple(images[i] for i in range(carrier.size))


def parse_text(text: str, cap: int = DEFAULT_CAP) -> AlgebraFile:
    lines = _Lines(text)
    af = AlgebraFile()
    squares: dict[int, object] = {}

    while True:
        row = lines.take()
        if row is None:
            return af
        line, body = row
        toks = body.split()
        kind = toks[0]
        if kind not in _HEADERS:
            raise AlgSyntaxError(line, f"expected a block header, got {kind!r}")

        if kind == "semiring":
            if len(toks) != 2:
                raise AlgSyntaxError(line, "semiring header is 'semiring NAME'")
            name = _check_name(toks[1], line)
            sections, order = _parse_sections(lines, name)
            _require(sections, order, ("elements", "zero", "one", "add", "mul"), name, line)
            el_line, el_toks = sections["elements"]
            el_names = {_check_name(t, el_line): i for i, t in enumerate(el_toks)}
            if len(el_names) != len(el_toks):
                raise AlgSyntaxError(el_line, f"duplicate element names in block {name}")
            n = len(el_toks)
            add = _parse_table(_RowsView(sections["add"][1]), n, el_names, name, n)
            mul = _parse_table(_RowsView(sections["mul"][1]), n, el_names, name, n)
            s = FiniteSemiring(name, n,
                               tuple(map(tuple, add)), tuple(map(tuple, mul)),
                               _single_name(sections, "zero", name, el_names),
                               _single_name(sections, "one", name, el_names),
                               tuple(el_toks))
            af.blocks.append(Block("semiring", name, None, s))
            continue

        if kind == "semimodule":
            if len(toks) != 4 or toks[2] != "over":
                raise AlgSyntaxError(line, "semimodule header is 'semimodule NAME over SEMIRING'")
            name = _check_name(toks[1], line)
            base_block = _resolve(af, toks[3], ("semiring",), line)
            base: FiniteSemiring = base_block.obj
            sections, order = _parse_sections(lines, name)
            _require(sections, order, ("elements", "zero", "add", "act"), name, line)
            el_line, el_toks = sections["elements"]
            el_names = {_check_name(t, el_line): i for i, t in enumerate(el_toks)}
            if len(el_names) != len(el_toks):
                raise AlgSyntaxError(el_line, f"duplicate element names in block {name}")
            n = len(el_toks)
            add = _parse_table(_RowsView(sections["add"][1]), n, el_names, name, n)
            act = _parse_table(_RowsView(sections["act"][1]), base.size, el_names, name, n)
            mod = TableSemimodule(base, n, tuple(map(tuple, add)),
                                  _single_name(sections, "zero", name, el_names),
                                  tuple(map(tuple, act)), tuple(el_toks))
            af.blocks.append(Block("semimodule", name, toks[3], mod))
            continue

        # structured blocks on a module carrier
        if len(toks) != 4 or toks[2] != "on":
            raise AlgSyntaxError(line, f"{kind} header is '{kind} NAME on MODULE'")
        name = _check_name(toks[1], line)
        mod_block = _resolve(af, toks[3], ("semimodule",), line)
        carrier: TableSemimodule = mod_block.obj
        names = _module_names(carrier)
        base_block = _resolve(af, mod_block.ref, ("semiring",), line)
        base_names = {nm: i for i, nm in enumerate(base_block.obj.element_names)}
        sections, order = _parse_sections(lines, name)

        def table_bim(key):
            rows = _parse_table(_RowsView(sections[key][1]), carrier.size, names, name, carrier.size)
            return Bimorphism.from_table(carrier, carrier, carrier, tuple(map(tuple, rows)))

        def carrier_square():
            if id(carrier) not in squares:
                rep = check_semimodule(carrier)
                if not rep.valid:
                    raise AlgLawError(name, rep)
                squares[id(carrier)] = tensor(carrier, carrier, cap)
            return squares[id(carrier)]

        def parse_comonoid_parts():
            square = carrier_square()
            comult_vals = _parse_comult_rows(sections["comult"][1], carrier, square, base_names, names, name)
            counit_rows = sections["counit"][1]
            if len(counit_rows) != carrier.size:
                raise AlgDimensionError(sections["counit"][0], name,
                                        f"counit needs {carrier.size} entries, got {len(counit_rows)}")
            try:
                counit_vals = tuple(base_names[t] for t in counit_rows)
            except KeyError as exc:
                raise AlgReferenceError(sections["counit"][0],
                                        f"unknown scalar name {exc.args[0]!r} in block {name}") from None
            return ComonoidObject(
                carrier, square,
                Hom.from_table(carrier, square.object, comult_vals),
                Hom.from_table(carrier, unit_module(carrier.base), counit_vals),
                name,
            )

        if kind == "monoid":
            _require(sections, order, ("unit", "mult"), name, line)
            obj = MonoidObject(carrier, table_bim("mult"), _single_name(sections, "unit", name, names), name)
        elif kind == "lie":
            _require(sections, order, ("bracket",), name, line)
            obj = LieObject(carrier, table_bim("bracket"), name)
        elif kind == "comonoid":
            _require(sections, order, ("counit", "comult"), name, line)
            obj = parse_comonoid_parts()
        elif kind == "bimonoid":
            _require(sections, order, ("unit", "mult", "counit", "comult"), name, line)
            obj = BimonoidObject(
                MonoidObject(carrier, table_bim("mult"), _single_name(sections, "unit", name, names), name),
                parse_comonoid_parts(), name,
            )
        else:  # hopf
            _require(sections, order, ("unit", "mult", "counit", "comult", "antipode"), name, line)
            anti_line, anti_toks = sections["antipode"]
            if len(anti_toks) != carrier.size:
                raise AlgDimensionError(anti_line, name,
                                        f"antipode needs {carrier.size} entries, got {len(anti_toks)}")
            try:
                anti = tuple(names[t] for t in anti_toks)
            except KeyError as exc:
                raise AlgReferenceError(anti_line, f"unknown element name {exc.args[0]!r} in block {name}") from None
            obj = HopfObject(
                MonoidObject(carrier, table_bim("mult"), _single_name(sections, "unit", name, names), name),
                parse_comonoid_parts(), name,
                Hom.from_table(carrier, carrier, anti),
            )
        af.blocks.append(Block(kind, name, toks[3], obj))


class _RowsView(_Lines):
    """Reuse the table parser over a captured list of (line, body) rows."""

    def __init__(self, rows):
        self.rows = list(rows)
        self.pos = 0


def parse(path, cap: int = DEFAULT_CAP) -> AlgebraFile:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), cap)


def _fmt_table(rows, indent="    "):
    return "\n".join(indent + " ".join(row) for row in rows)


def serialize(af: AlgebraFile) -> str:
    """Canonical text form; parse(serialize(parse(x))) is the identity."""
    out = []
    for block in af.blocks:
        obj = block.obj
        if block.kind == "semiring":
            s: FiniteSemiring = obj
            nm = s.element_names
            out.append(f"semiring {block.name}")
            out.append("  elements " + " ".join(nm))
            out.append(f"  zero {nm[s.zero]}")
            out.append(f"  one {nm[s.one]}")
            out.append("  add")
            out.append(_fmt_table([[nm[v] for v in row] for row in s.add]))
            out.append("  mul")
            out.append(_fmt_table([[nm[v] for v in row] for row in s.mul]))
            out.append("end")
        elif block.kind == "semimodule":
            m: TableSemimodule = obj
            nm = m.names
            out.append(f"semimodule {block.name} over {block.ref}")
            out.append("  elements " + " ".join(nm))
            out.append(f"  zero {nm[m.zero]}")
            out.append("  add")
            out.append(_fmt_table([[nm[m.add(i, j)] for j in range(m.size)] for i in range(m.size)]))
            out.append("  act")
            out.append(_fmt_table([[nm[m.act(s, i)] for i in range(m.size)] for s in m.base.elements()]))
            out.append("end")
        else:
            out.append(f"{block.kind} {block.name} on {block.ref}")
            carrier = obj.carrier
            nm = carrier.names
            if block.kind in ("monoid", "bimonoid", "hopf"):
                mon = obj if block.kind == "monoid" else obj.monoid
                out.append(f"  unit {nm[mon.unit]}")
                out.append("  mult")
                out.append(_fmt_table(
                    [[nm[mon.mult(i, j)] for j in range(carrier.size)] for i in range(carrier.size)]
                ))
            if block.kind == "lie":
                out.append("  bracket")
                out.append(_fmt_table(
                    [[nm[obj.bracket(i, j)] for j in range(carrier.size)] for i in range(carrier.size)]
                ))
            if block.kind in ("comonoid", "bimonoid", "hopf"):
                base_nm = _base_element_names(af, block)
                out.append("  counit " + " ".join(base_nm[obj.counit(i)] for i in range(carrier.size)))
                out.append("  comult")
                for i in range(carrier.size):
                    terms = []
                    for a, b in obj.square.decompose(obj.comult(i)):
                        terms.append(f"{nm[a]}.{nm[b]}")
                    rhs = " + ".join(terms) if terms else f"{nm[carrier.zero]}.{nm[carrier.zero]}"
                    out.append(f"    {nm[i]} = {rhs}")
            if block.kind == "hopf":
                out.append("  antipode " + " ".join(nm[obj.antipode(i)] for i in range(carrier.size)))
            out.append("end")
        out.append("")
    return "\n".join(out)


def _base_element_names(af: AlgebraFile, block: Block):
    mod_block = af.lookup(block.ref)
    base_block = af.lookup(mod_block.ref)
    return base_block.obj.element_names
