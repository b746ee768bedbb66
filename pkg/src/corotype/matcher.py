"""Matching offered types against receiving patterns.

``match(offered, pattern)`` binds variables of ``pattern`` only; variables
that occur in ``offered`` are treated as rigid names.  Failure is the
``BOTTOM`` bindings value rather than an exception.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from .core import (
    Concrete,
    Coroutine,
    Dec,
    Fresh,
    LengthExpr,
    ListOf,
    LVar,
    Min,
    Ref,
    Seq,
    Star,
    Tuple,
    TypeExpr,
    Var,
    Void,
    eval_length,
    hd,
    normalize,
)

FreshSource = Callable[[], Fresh]

_global_fresh = itertools.count()


def default_fresh() -> Fresh:
    return Fresh(next(_global_fresh))


@dataclass(frozen=True)
class Bindings:
    types: Mapping[str, TypeExpr] = field(default_factory=dict)
    lengths: Mapping[str, LengthExpr] = field(default_factory=dict)
    bottom: bool = False

    def __bool__(self) -> bool:
        return not self.bottom

    @property
    def empty(self) -> bool:
        return not self.bottom and not self.types and not self.lengths

    def __repr__(self) -> str:
        if self.bottom:
            return "Bindings(⊥)"
        return f"Bindings(types={dict(self.types)!r}, lengths={dict(self.lengths)!r})"


EMPTY = Bindings()
BOTTOM = Bindings(bottom=True)


def bind_type(name: str, value: TypeExpr) -> Bindings:
    return Bindings(types={name: value})


def bind_length(name: str, value: LengthExpr) -> Bindings:
    return Bindings(lengths={name: value})


# --- union -----------------------------------------------------------------

def union(a: Bindings, b: Bindings) -> Bindings:
    if a.bottom or b.bottom:
        return BOTTOM
    types = dict(a.types)
    for name, value in b.types.items():
        if name in types and types[name] != value:
            return BOTTOM
        types[name] = value
    lengths = dict(a.lengths)
    for name, value in b.lengths.items():
        if name in lengths and eval_length(lengths[name]) != eval_length(value):
            return BOTTOM
        lengths[name] = value
    return _resolve(types, lengths)


def _resolve(types: dict, lengths: dict) -> Bindings:
    # Bound values may mention other bound names; substitute until no chain remains.
    for _ in range(len(types) + len(lengths) + 1):
        d = Bindings(types, lengths)
        new_types = {k: _subst(v, d) for k, v in types.items()}
        new_lengths = {k: _subst_length(v, d) for k, v in lengths.items()}
        if new_types == types and new_lengths == lengths:
            break
        types, lengths = new_types, new_lengths
    else:
        return BOTTOM  # cyclic binding
    # x = x carries no information; x = f(x) is an occurs failure
    for k, v in list(types.items()):
        if v == Var(k):
            del types[k]
        elif _mentions(v, k, types_only=True):
            return BOTTOM
    for k, v in list(lengths.items()):
        if v == LVar(k):
            del lengths[k]
        elif _length_mentions(v, k):
            return BOTTOM
    return Bindings(types, lengths)


def _length_mentions(length: LengthExpr, name: str) -> bool:
    match length:
        case LVar(n):
            return n == name
        case Dec(inner):
            return _length_mentions(inner, name)
        case Min(a, b):
            return _length_mentions(a, name) or _length_mentions(b, name)
    return False


def _mentions(t: TypeExpr, name: str, types_only: bool = False) -> bool:
    match t:
        case Var(n):
            return n == name
        case Seq(items) | Tuple(items):
            return any(_mentions(i, name, types_only) for i in items)
        case ListOf(elem, length):
            return _mentions(elem, name, types_only) or (
                not types_only and _length_mentions(length, name))
        case Coroutine(recv, yld):
            return _mentions(recv, name, types_only) or _mentions(yld, name, types_only)
    return False


# --- lengths ---------------------------------------------------------------

def unify_length(offered: LengthExpr, pattern: LengthExpr,
                 fresh: FreshSource = default_fresh) -> Bindings:
    match pattern:
        case LVar(name):
            if isinstance(offered, Star):
                return bind_length(name, fresh())
            return bind_length(name, offered)
        case Star():
            return EMPTY if isinstance(offered, Star) else BOTTOM
        case _:
            # literal, fresh or irreducible symbolic pattern: exact agreement only
            if isinstance(offered, Star):
                return BOTTOM
            return EMPTY if eval_length(offered) == eval_length(pattern) else BOTTOM


# --- matching --------------------------------------------------------------

def match(offered: TypeExpr, pattern: TypeExpr,
          fresh: FreshSource = default_fresh) -> Bindings:
    """Conditions under which ``offered`` satisfies the demand of ``pattern``.

    A coroutine pattern is matched part by part.  Any other pattern
    contributes only its head, so a sequence demand is consumed one atomic
    unit at a time.  An empty pattern has no demand and never matches.
    """
    if isinstance(pattern, Coroutine):
        return _match_coroutine(offered, pattern, fresh)
    if isinstance(pattern, Void):
        return BOTTOM
    head = hd(pattern)
    if isinstance(head, Coroutine):
        return _match_coroutine(offered, head, fresh)
    return structural_match(offered, head, fresh)


def _match_coroutine(offered: TypeExpr, pattern: Coroutine,
                     fresh: FreshSource) -> Bindings:
    if not isinstance(offered, Coroutine):
        return BOTTOM
    recv = structural_match(offered.recv, pattern.recv, fresh)
    if not recv:
        return BOTTOM
    return union(recv, structural_match(offered.yld, pattern.yld, fresh))


def structural_match(offered: TypeExpr, pattern: TypeExpr,
                     fresh: FreshSource = default_fresh) -> Bindings:
    """Match whole types: every part of ``pattern`` must be accounted for."""
    match pattern, offered:
        case Var(name), _:
            return bind_type(name, offered)
        case Void(), Void():
            return EMPTY
        case Concrete(a), Concrete(b):
            return EMPTY if a == b else BOTTOM
        case Ref(a), Ref(b):
            return EMPTY if a == b else BOTTOM
        case (Seq(ps), Seq(os)) | (Tuple(ps), Tuple(os)):
            if len(ps) != len(os):
                return BOTTOM
            d = EMPTY
            for o, p in zip(os, ps):
                d = union(d, structural_match(o, p, fresh))
                if not d:
                    return BOTTOM
            return d
        case ListOf(pe, pl), ListOf(oe, ol):
            d = structural_match(oe, pe, fresh)
            if not d:
                return BOTTOM
            return union(d, unify_length(ol, pl, fresh))
        case Coroutine(), Coroutine():
            return _match_coroutine(offered, pattern, fresh)
    return BOTTOM


# --- substitution ----------------------------------------------------------

def _subst_length(length: LengthExpr, d: Bindings) -> LengthExpr:
    match length:
        case LVar(name):
            return d.lengths.get(name, length)
        case Dec(inner):
            return Dec(_subst_length(inner, d))
        case Min(a, b):
            return Min(_subst_length(a, d), _subst_length(b, d))
    return length


def _subst(t: TypeExpr, d: Bindings) -> TypeExpr:
    match t:
        case Var(name):
            return d.types.get(name, t)
        case Seq(items):
            return Seq(tuple(_subst(i, d) for i in items))
        case Tuple(items):
            return Tuple(tuple(_subst(i, d) for i in items))
        case ListOf(elem, length):
            return ListOf(_subst(elem, d), _subst_length(length, d))
        case Coroutine(recv, yld):
            return replace(t, recv=_subst(recv, d), yld=_subst(yld, d))
    return t


def _eval_lengths(t: TypeExpr) -> TypeExpr:
    match t:
        case Seq(items):
            return Seq(tuple(_eval_lengths(i) for i in items))
        case Tuple(items):
            return Tuple(tuple(_eval_lengths(i) for i in items))
        case ListOf(elem, length):
            return ListOf(_eval_lengths(elem), eval_length(length))
        case Coroutine(recv, yld):
            return replace(t, recv=_eval_lengths(recv), yld=_eval_lengths(yld))
    return t


def substitute(t: TypeExpr, d: Bindings) -> TypeExpr:
    """Apply ``d`` everywhere in ``t``, evaluate lengths, and renormalize.

    Raises ``LengthEvalError`` when a length reduces to ``dec(0)``.
    """
    if d.bottom:
        raise ValueError("cannot substitute with ⊥")
    return normalize(_eval_lengths(_subst(t, d)))

