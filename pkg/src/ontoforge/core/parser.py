"""Functional-syntax reader for the supported axiom subset.

Grammar (whitespace-insensitive):

    document   := prefixDecl* 'Ontology' '(' iri? axiom* ')'
    prefixDecl := 'Prefix' '(' PNAME ':=' IRIREF ')'
    axiom      := Declaration | SubClassOf | EquivalentClasses
                | SubObjectPropertyOf | ClassAssertion
                | ObjectPropertyAssertion | AnnotationAssertion
    classExpr  := iri | 'ObjectIntersectionOf' '(' classExpr classExpr+ ')'
                | 'ObjectSomeValuesFrom' '(' iri classExpr ')'
    value      := iri | '"' chars '"' ('@' langtag | '^^' iri)?

Well-formed OWL outside this subset raises UnsupportedConstruct; anything
else raises ParseError with a line/column position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .model import (
    AnnotationAssertion,
    AnnotationValue,
    Axiom,
    ClassAssertion,
    ClassExpression,
    Declaration,
    Entity,
    EntityKind,
    EquivalentClasses,
    IntersectionOf,
    Iri,
    IriValue,
    Literal,
    MalformedIri,
    NamedClass,
    ObjectPropertyAssertion,
    OntologyDocument,
    OntologyError,
    PrefixTable,
    SomeValuesFrom,
    SubClassOf,
    SubObjectPropertyOf,
)


class ParseError(OntologyError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class UnsupportedConstruct(ParseError):
    def __init__(self, construct: str, line: int, column: int):
        super().__init__(line, column, f"unsupported construct {construct}")
        self.construct = construct


_ENTITY_KEYWORDS = {kind.value: kind for kind in EntityKind}

# OWL 2 functional-syntax constructs we recognise but do not model. Hitting
# one of these is an UnsupportedConstruct, not a syntax error.
_KNOWN_OWL_CONSTRUCTS = frozenset({
    "Import", "Annotation", "DataIntersectionOf", "DataUnionOf",
    "DataComplementOf", "DataOneOf", "DatatypeRestriction",
    "ObjectUnionOf", "ObjectComplementOf", "ObjectOneOf",
    "ObjectAllValuesFrom", "ObjectHasValue", "ObjectHasSelf",
    "ObjectMinCardinality", "ObjectMaxCardinality", "ObjectExactCardinality",
    "DataSomeValuesFrom", "DataAllValuesFrom", "DataHasValue",
    "DataMinCardinality", "DataMaxCardinality", "DataExactCardinality",
    "ObjectInverseOf", "DisjointClasses", "DisjointUnion",
    "SubDataPropertyOf", "EquivalentObjectProperties", "EquivalentDataProperties",
    "DisjointObjectProperties", "DisjointDataProperties",
    "InverseObjectProperties", "ObjectPropertyDomain", "ObjectPropertyRange",
    "DataPropertyDomain", "DataPropertyRange", "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty", "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty", "SymmetricObjectProperty",
    "AsymmetricObjectProperty", "TransitiveObjectProperty",
    "FunctionalDataProperty", "DatatypeDefinition", "HasKey",
    "SameIndividual", "DifferentIndividuals", "DataPropertyAssertion",
    "NegativeObjectPropertyAssertion", "NegativeDataPropertyAssertion",
    "AnnotationPropertyDomain", "AnnotationPropertyRange",
    "SubAnnotationPropertyOf",
})

_NAME_START_RE = re.compile(r"[A-Za-z_]")
_NAME_CHAR_RE = re.compile(r"[A-Za-z0-9_.\-]")
_LANGTAG_RE = re.compile(r"[A-Za-z]+(?:-[A-Za-z0-9]+)*")


@dataclass
class _Token:
    kind: str  # "(", ")", "=", "iriref", "pname", "ident", "string", "langtag", "^^", "eof"
    value: object
    line: int
    column: int


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def _error(self, message: str, line: int | None = None, column: int | None = None):
        raise ParseError(line or self.line, column or self.column, message)

    def _advance(self, n: int = 1) -> str:
        chunk = self.text[self.pos:self.pos + n]
        for ch in chunk:
            if ch == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
        self.pos += n
        return chunk

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def tokens(self) -> Iterator[_Token]:
        text = self.text
        while True:
            while self.pos < len(text) and text[self.pos].isspace():
                self._advance()
            if self.pos >= len(text):
                yield _Token("eof", None, self.line, self.column)
                return
            line, column = self.line, self.column
            ch = text[self.pos]
            if ch in "()":
                self._advance()
                yield _Token(ch, ch, line, column)
            elif ch == "=":
                self._advance()
                yield _Token("=", "=", line, column)
            elif ch == "<":
                self._advance()
                end = text.find(">", self.pos)
                if end < 0:
                    self._error("unterminated IRI", line, column)
                raw = text[self.pos:end]
                self._advance(len(raw) + 1)
                yield _Token("iriref", raw, line, column)
            elif ch == '"':
                self._advance()
                chars: list[str] = []
                while True:
                    if self.pos >= len(text):
                        self._error("unterminated string literal", line, column)
                    c = text[self.pos]
                    if c == "\\":
                        nxt = text[self.pos + 1:self.pos + 2]
                        if nxt not in ('"', "\\"):
                            self._error("invalid escape in string literal")
                        self._advance(2)
                        chars.append(nxt)
                    elif c == '"':
                        self._advance()
                        break
                    else:
                        self._advance()
                        chars.append(c)
                yield _Token("string", "".join(chars), line, column)
            elif ch == "@":
                self._advance()
                m = _LANGTAG_RE.match(text, self.pos)
                if not m:
                    self._error("malformed language tag", line, column)
                self._advance(len(m.group()))
                yield _Token("langtag", m.group(), line, column)
            elif ch == "^":
                if text[self.pos:self.pos + 2] != "^^":
                    self._error("expected ^^", line, column)
                self._advance(2)
                yield _Token("^^", "^^", line, column)
            elif ch == ":":
                self._advance()
                local = self._scan_name_chars()
                yield _Token("pname", ("", local), line, column)
            elif _NAME_START_RE.match(ch):
                name = self._scan_name_chars()
                if self._peek() == ":":
                    self._advance()
                    local = self._scan_name_chars()
                    yield _Token("pname", (name, local), line, column)
                else:
                    yield _Token("ident", name, line, column)
            else:
                self._error(f"unexpected character {ch!r}", line, column)

    def _scan_name_chars(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and _NAME_CHAR_RE.match(self.text[self.pos]):
            self.pos += 1
        chunk = self.text[start:self.pos]
        self.column += len(chunk)
        return chunk


class _Parser:
    def __init__(self, text: str, prefixes: PrefixTable | None = None):
        self._tokens = _Tokenizer(text).tokens()
        self._lookahead: Optional[_Token] = None
        self.prefixes = prefixes or PrefixTable.standard()

    def _next(self) -> _Token:
        if self._lookahead is not None:
            token, self._lookahead = self._lookahead, None
            return token
        return next(self._tokens)

    def _peek(self) -> _Token:
        if self._lookahead is None:
            self._lookahead = next(self._tokens)
        return self._lookahead

    def _expect(self, kind: str) -> _Token:
        token = self._next()
        if token.kind != kind:
            raise ParseError(token.line, token.column, f"expected {kind!r}, found {token.kind!r}")
        return token

    def _resolve_iri(self, token: _Token) -> Iri:
        if token.kind == "iriref":
            try:
                return Iri(str(token.value))
            except MalformedIri as exc:
                raise ParseError(token.line, token.column, str(exc)) from exc
        if token.kind == "pname":
            prefix, local = token.value  # type: ignore[misc]
            namespace = self.prefixes.namespace_of(prefix)
            if namespace is None:
                raise ParseError(token.line, token.column, f"unknown prefix {prefix!r}")
            return Iri(namespace.value + local)
        raise ParseError(token.line, token.column, f"expected an IRI, found {token.kind!r}")

    def _iri(self) -> Iri:
        return self._resolve_iri(self._next())

    def parse_document(self) -> OntologyDocument:
        while self._peek().kind == "ident" and self._peek().value == "Prefix":
            self._parse_prefix_declaration()
        head = self._next()
        if head.kind != "ident" or head.value != "Ontology":
            raise ParseError(head.line, head.column, "expected Ontology(...)")
        self._expect("(")
        ontology_iri: Iri | None = None
        if self._peek().kind in ("iriref", "pname"):
            ontology_iri = self._iri()
            if self._peek().kind in ("iriref", "pname"):
                nxt = self._peek()
                raise UnsupportedConstruct("versionIRI", nxt.line, nxt.column)
        axioms: list[Axiom] = []
        while True:
            token = self._peek()
            if token.kind == ")":
                self._next()
                break
            if token.kind == "eof":
                raise ParseError(token.line, token.column, "unexpected end of input in Ontology(...)")
            axioms.append(self.parse_axiom())
        tail = self._next()
        if tail.kind != "eof":
            raise ParseError(tail.line, tail.column, "trailing content after Ontology(...)")
        return OntologyDocument(ontology_iri, self.prefixes, tuple(axioms))

    def _parse_prefix_declaration(self):
        self._next()  # Prefix
        self._expect("(")
        token = self._next()
        if token.kind != "pname" or token.value[1] != "":  # type: ignore[index]
            raise ParseError(token.line, token.column, "expected prefixName:=<IRI>")
        prefix = token.value[0]  # type: ignore[index]
        self._expect("=")
        namespace_token = self._expect("iriref")
        namespace = self._resolve_iri(namespace_token)
        existing = self.prefixes.namespace_of(prefix)
        if existing is not None and existing != namespace:
            if self.prefixes.is_builtin(prefix):
                raise ParseError(
                    token.line, token.column,
                    f"prefix {prefix!r} is built in and cannot be redeclared",
                )
            raise ParseError(token.line, token.column, f"prefix {prefix!r} declared twice")
        self.prefixes = self.prefixes.register(prefix, namespace)
        self._expect(")")

    def parse_axiom(self) -> Axiom:
        token = self._next()
        if token.kind != "ident":
            raise ParseError(token.line, token.column, f"expected an axiom, found {token.kind!r}")
        name = str(token.value)
        if name == "Declaration":
            self._expect("(")
            entity = self._parse_entity()
            self._expect(")")
            return Declaration(entity)
        if name == "SubClassOf":
            self._expect("(")
            sub = self.parse_class_expression()
            sup = self.parse_class_expression()
            self._expect(")")
            return SubClassOf(sub, sup)
        if name == "EquivalentClasses":
            self._expect("(")
            operands = [self.parse_class_expression(), self.parse_class_expression()]
            while self._peek().kind != ")":
                operands.append(self.parse_class_expression())
            self._next()
            return EquivalentClasses(tuple(operands))
        if name == "SubObjectPropertyOf":
            self._expect("(")
            sub = self._iri()
            sup = self._iri()
            self._expect(")")
            return SubObjectPropertyOf(sub, sup)
        if name == "ClassAssertion":
            self._expect("(")
            ce = self.parse_class_expression()
            individual = self._iri()
            self._expect(")")
            return ClassAssertion(ce, individual)
        if name == "ObjectPropertyAssertion":
            self._expect("(")
            prop = self._iri()
            source = self._iri()
            target = self._iri()
            self._expect(")")
            return ObjectPropertyAssertion(prop, source, target)
        if name == "AnnotationAssertion":
            self._expect("(")
            prop = self._iri()
            subject = self._iri()
            value = self._parse_annotation_value()
            self._expect(")")
            return AnnotationAssertion(prop, subject, value)
        if name in _KNOWN_OWL_CONSTRUCTS:
            raise UnsupportedConstruct(name, token.line, token.column)
        raise ParseError(token.line, token.column, f"unknown construct {name!r}")

    def _parse_entity(self) -> Entity:
        token = self._next()
        if token.kind != "ident":
            raise ParseError(token.line, token.column, "expected an entity kind")
        name = str(token.value)
        kind = _ENTITY_KEYWORDS.get(name)
        if kind is None:
            if name in _KNOWN_OWL_CONSTRUCTS:
                raise UnsupportedConstruct(name, token.line, token.column)
            raise ParseError(token.line, token.column, f"unknown entity kind {name!r}")
        self._expect("(")
        iri = self._iri()
        self._expect(")")
        return Entity(kind, iri)

    def parse_class_expression(self) -> ClassExpression:
        token = self._peek()
        if token.kind in ("iriref", "pname"):
            return NamedClass(self._iri())
        if token.kind == "ident":
            name = str(token.value)
            self._next()
            if name == "ObjectIntersectionOf":
                self._expect("(")
                operands = [self.parse_class_expression(), self.parse_class_expression()]
                while self._peek().kind != ")":
                    operands.append(self.parse_class_expression())
                self._next()
                return IntersectionOf(tuple(operands))
            if name == "ObjectSomeValuesFrom":
                self._expect("(")
                prop = self._iri()
                filler = self.parse_class_expression()
                self._expect(")")
                return SomeValuesFrom(prop, filler)
            if name in _KNOWN_OWL_CONSTRUCTS:
                raise UnsupportedConstruct(name, token.line, token.column)
            raise ParseError(token.line, token.column, f"unknown class expression {name!r}")
        raise ParseError(token.line, token.column, "expected a class expression")

    def _parse_annotation_value(self) -> AnnotationValue:
        token = self._next()
        if token.kind in ("iriref", "pname"):
            return IriValue(self._resolve_iri(token))
        if token.kind == "string":
            lexical = str(token.value)
            nxt = self._peek()
            if nxt.kind == "langtag":
                self._next()
                return Literal(lexical, language=str(nxt.value))
            if nxt.kind == "^^":
                self._next()
                return Literal(lexical, datatype=self._iri())
            return Literal(lexical)
        raise ParseError(token.line, token.column, "expected an annotation value")


def parse_ontology(text: str) -> OntologyDocument:
    """Parse a full ontology document."""
    return _Parser(text).parse_document()


def parse_axiom(text: str, prefixes: PrefixTable | None = None) -> Axiom:
    """Parse a single axiom (no surrounding Ontology(...) wrapper)."""
    parser = _Parser(text, prefixes)
    axiom = parser.parse_axiom()
    tail = parser._next()
    if tail.kind != "eof":
        raise ParseError(tail.line, tail.column, "trailing content after axiom")
    return axiom
