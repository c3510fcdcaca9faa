"""Shared proof constructions used by several test modules."""

from seqsurf.formulas import Atom, StarL, UnitBot, hom_left, hom_right
from seqsurf.proofs import axiom, cut, make


def triple_dual_proofs():
    """The composite and identity proofs of the triple-dual problem at
    X = bot: both prove T |- T for T = bot o- ((bot o- A) -o bot)."""
    A, bot = Atom("A"), UnitBot()
    B = hom_left(bot, A)            # bot o- A
    Q = hom_right(B, bot)           # (bot o- A) -o bot
    T = hom_left(bot, Q)

    # q : A |- Q, curried from the evaluation of bot o- A
    q = axiom(B)
    for rule, args in [("par-r-elim", (0,)), ("bot-r-elim", (0,)),
                       ("n4-elim", ()), ("bot-r-intro", (0,)),
                       ("n2-intro", ()), ("par-r-intro", (0,))]:
        q = make(rule, args, (q,))

    # bot o- q : T |- B  (whisker q on the left of the par)
    leg = q
    for rule, args in [("n3-intro", ()), ("n4-intro", ()),
                       ("bot-r-intro", (0,)), ("par-r-intro", (0,))]:
        leg = make(rule, args, (leg,))
    aux = axiom(T)
    aux = make("par-r-elim", (0,), (aux,))
    aux = make("bot-r-elim", (0,), (aux,))
    leg1 = cut(StarL(Q), aux, leg)

    # p at B : B |- T
    p = axiom(Q)
    for rule, args in [("par-r-elim", (0,)), ("bot-r-elim", (1,)),
                       ("n2-elim", ()), ("bot-r-intro", (0,)),
                       ("n4-intro", ()), ("par-r-intro", (0,))]:
        p = make(rule, args, (p,))

    composite = cut(B, leg1, p)
    identity = axiom(T)
    return composite, identity


units_left_script = """
a1: A |- A ; axiom A
a2: A |- bot, A ; bot-int 0 a1
b1: B |- B ; axiom B
c: A, B |- bot, (A (x) B) ; tensor-r a2 b1
d: A, B |- (bot (+) (A (x) B)) ; par-r-intro 0 c
"""

units_right_script = """
a1: A |- A ; axiom A
b1: B |- B ; axiom B
c: A, B |- (A (x) B) ; tensor-r a1 b1
c2: A, B |- bot, (A (x) B) ; bot-int 0 c
d: A, B |- (bot (+) (A (x) B)) ; par-r-intro 0 c2
"""

comparison_script = """
a1: A |- A ; axiom A
a2: A |- bot, A ; bot-int 0 a1
b1: B |- B ; axiom B
c: A, B |- bot, (A (x) B) ; tensor-r a2 b1
"""
