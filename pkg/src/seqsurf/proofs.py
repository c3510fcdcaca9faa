"""Sequent-calculus proof trees, rule checking, and derived-rule expansion.

The basis has a symmetric intro/elim pair for each of tensor-left,
par-right, I-left and bot-right (the core fragment), an AXIOM and a
minimal CUT, open PREMISE leaves, and four invertible negation rules
N1..N4 that move a formula between the ends of the two sides:

    N1: G |- D, A   <->  G, A^ |- D
    N2: A, G |- D   <->  G |- A^, D
    N3: G |- A, D   <->  ^A, G |- D
    N4: G, A |- D   <->  G |- D, ^A

INTRO is the downward reading (left to right above).  The usual
tensor-right, par-left, I-right and bot-left rules, and a cut with
one-sided context, are macros expanded by :func:`expand_derived`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formulas import (
    Atom,
    Formula,
    Par,
    ParseError,
    Sequent,
    StarL,
    StarR,
    Tensor,
    UnitBot,
    UnitI,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
)


class RuleError(ValueError):
    pass


AXIOM = "axiom"
CUT = "cut"
PREMISE = "premise"
TENSOR_L_INTRO = "tensor-l-intro"
TENSOR_L_ELIM = "tensor-l-elim"
PAR_R_INTRO = "par-r-intro"
PAR_R_ELIM = "par-r-elim"
I_L_INTRO = "i-l-intro"
I_L_ELIM = "i-l-elim"
BOT_R_INTRO = "bot-r-intro"
BOT_R_ELIM = "bot-r-elim"
N_RULES = tuple(f"n{k}-{d}" for k in (1, 2, 3, 4) for d in ("intro", "elim"))
TENSOR_R = "tensor-r"
PAR_L = "par-l"
I_R = "i-r"
BOT_L = "bot-l"
CUT_GENERAL = "cut-general"

CORE_RULES = {
    TENSOR_L_INTRO, TENSOR_L_ELIM, PAR_R_INTRO, PAR_R_ELIM,
    I_L_INTRO, I_L_ELIM, BOT_R_INTRO, BOT_R_ELIM,
}
BASIS_RULES = {AXIOM, CUT, PREMISE} | CORE_RULES | set(N_RULES)
DERIVED_RULES = {TENSOR_R, PAR_L, I_R, BOT_L, CUT_GENERAL}

RULE_ALIASES = {"bot-int": BOT_R_INTRO}

# arity of the premise list, and argument signature used by the parser:
# 'f' formula, 'i' integer position.
RULE_SIGNATURES: dict[str, tuple[int, str]] = {
    AXIOM: (0, "f"),
    CUT: (2, "f"),
    PREMISE: (0, ""),
    TENSOR_L_INTRO: (1, "i"), TENSOR_L_ELIM: (1, "i"),
    PAR_R_INTRO: (1, "i"), PAR_R_ELIM: (1, "i"),
    I_L_INTRO: (1, "i"), I_L_ELIM: (1, "i"),
    BOT_R_INTRO: (1, "i"), BOT_R_ELIM: (1, "i"),
    **{r: (1, "") for r in N_RULES},
    TENSOR_R: (2, ""),
    PAR_L: (2, ""),
    I_R: (0, ""),
    BOT_L: (0, ""),
    CUT_GENERAL: (2, "fi"),
}


@dataclass(frozen=True)
class Proof:
    rule: str
    args: tuple
    premises: tuple["Proof", ...]
    conclusion: Sequent

    def __str__(self) -> str:
        return print_proof(self)


def apply_rule(rule: str, args: tuple, premises: tuple[Sequent, ...]) -> Sequent:
    """Compute the conclusion a rule yields from its premise sequents."""
    n, _ = RULE_SIGNATURES.get(rule, (None, None))
    if n is None:
        raise RuleError(f"unknown rule {rule!r}")
    if len(premises) != n:
        raise RuleError(f"{rule} expects {n} premises, got {len(premises)}")

    if rule == AXIOM:
        (f,) = args
        return Sequent((f,), (f,))
    if rule == PREMISE:
        (s,) = args
        return s
    if rule == CUT:
        (f,) = args
        l, r = premises
        if l.succedent != (f,):
            raise RuleError(f"cut formulas differ: left proves {print_sequent(l)}, cut on {print_formula(f)}")
        if r.antecedent != (f,):
            raise RuleError(f"cut formulas differ: right proves {print_sequent(r)}, cut on {print_formula(f)}")
        return Sequent(l.antecedent, r.succedent)

    if rule in CORE_RULES:
        (i,) = args
        (p,) = premises
        ante, succ = list(p.antecedent), list(p.succedent)
        if rule == TENSOR_L_INTRO:
            if not 0 <= i < len(ante) - 1:
                raise RuleError(f"position {i} out of range")
            ante[i:i + 2] = [Tensor(ante[i], ante[i + 1])]
        elif rule == TENSOR_L_ELIM:
            if not 0 <= i < len(ante) or not isinstance(ante[i], Tensor):
                raise RuleError(f"no tensor at antecedent position {i}")
            ante[i:i + 1] = [ante[i].left, ante[i].right]
        elif rule == PAR_R_INTRO:
            if not 0 <= i < len(succ) - 1:
                raise RuleError(f"position {i} out of range")
            succ[i:i + 2] = [Par(succ[i], succ[i + 1])]
        elif rule == PAR_R_ELIM:
            if not 0 <= i < len(succ) or not isinstance(succ[i], Par):
                raise RuleError(f"no par at succedent position {i}")
            succ[i:i + 1] = [succ[i].left, succ[i].right]
        elif rule == I_L_INTRO:
            if not 0 <= i <= len(ante):
                raise RuleError(f"position {i} out of range")
            ante.insert(i, UnitI())
        elif rule == I_L_ELIM:
            if not 0 <= i < len(ante) or not isinstance(ante[i], UnitI):
                raise RuleError(f"no I at antecedent position {i}")
            del ante[i]
        elif rule == BOT_R_INTRO:
            if not 0 <= i <= len(succ):
                raise RuleError(f"position {i} out of range")
            succ.insert(i, UnitBot())
        elif rule == BOT_R_ELIM:
            if not 0 <= i < len(succ) or not isinstance(succ[i], UnitBot):
                raise RuleError(f"no bot at succedent position {i}")
            del succ[i]
        return Sequent(tuple(ante), tuple(succ))

    if rule in N_RULES:
        (p,) = premises
        ante, succ = list(p.antecedent), list(p.succedent)
        if rule == "n1-intro":
            if not succ:
                raise RuleError("empty succedent")
            ante.append(StarR(succ.pop()))
        elif rule == "n1-elim":
            if not ante or not isinstance(ante[-1], StarR):
                raise RuleError("rightmost antecedent is not a right star")
            succ.append(ante.pop().inner)
        elif rule == "n2-intro":
            if not ante:
                raise RuleError("empty antecedent")
            succ.insert(0, StarR(ante.pop(0)))
        elif rule == "n2-elim":
            if not succ or not isinstance(succ[0], StarR):
                raise RuleError("leftmost succedent is not a right star")
            ante.insert(0, succ.pop(0).inner)
        elif rule == "n3-intro":
            if not succ:
                raise RuleError("empty succedent")
            ante.insert(0, StarL(succ.pop(0)))
        elif rule == "n3-elim":
            if not ante or not isinstance(ante[0], StarL):
                raise RuleError("leftmost antecedent is not a left star")
            succ.insert(0, ante.pop(0).inner)
        elif rule == "n4-intro":
            if not ante:
                raise RuleError("empty antecedent")
            succ.append(StarL(ante.pop()))
        elif rule == "n4-elim":
            if not succ or not isinstance(succ[-1], StarL):
                raise RuleError("rightmost succedent is not a left star")
            ante.append(succ.pop().inner)
        return Sequent(tuple(ante), tuple(succ))

    if rule == TENSOR_R:
        l, r = premises
        if not l.succedent:
            raise RuleError("left premise has empty succedent")
        if not r.succedent:
            raise RuleError("right premise has empty succedent")
        a, b = l.succedent[-1], r.succedent[0]
        return Sequent(
            l.antecedent + r.antecedent,
            l.succedent[:-1] + (Tensor(a, b),) + r.succedent[1:],
        )
    if rule == PAR_L:
        l, r = premises
        if not l.antecedent:
            raise RuleError("left premise has empty antecedent")
        if not r.antecedent:
            raise RuleError("right premise has empty antecedent")
        a, b = l.antecedent[-1], r.antecedent[0]
        return Sequent(
            l.antecedent[:-1] + (Par(a, b),) + r.antecedent[1:],
            l.succedent + r.succedent,
        )
    if rule == I_R:
        return Sequent((), (UnitI(),))
    if rule == BOT_L:
        return Sequent((UnitBot(),), ())
    if rule == CUT_GENERAL:
        f, pos = args
        l, r = premises
        if l.succedent != (f,):
            raise RuleError("left premise must prove exactly the cut formula")
        if not (0 <= pos < len(r.antecedent)) or r.antecedent[pos] != f:
            raise RuleError(f"cut formula not at antecedent position {pos}")
        return Sequent(
            r.antecedent[:pos] + l.antecedent + r.antecedent[pos + 1:],
            r.succedent,
        )
    raise RuleError(f"unknown rule {rule!r}")


def make(rule: str, args: tuple = (), premises: tuple[Proof, ...] = ()) -> Proof:
    """Build a proof node with its conclusion computed from the rule."""
    conclusion = apply_rule(rule, args, tuple(p.conclusion for p in premises))
    return Proof(rule, tuple(args), tuple(premises), conclusion)


def axiom(f: Formula) -> Proof:
    return make(AXIOM, (f,))


def premise(s: Sequent) -> Proof:
    return make(PREMISE, (s,))


def cut(f: Formula, left: Proof, right: Proof) -> Proof:
    return make(CUT, (f,), (left, right))


def validate_proof(p: Proof) -> list[str]:
    """Recompute every node's conclusion; return diagnostics (empty = valid)."""
    diags: list[str] = []

    def walk(node: Proof, path: str):
        for k, q in enumerate(node.premises):
            walk(q, f"{path}.{k}")
        try:
            expected = apply_rule(node.rule, node.args, tuple(q.conclusion for q in node.premises))
        except RuleError as e:
            diags.append(f"{path}: {node.rule}: {e}")
            return
        if expected != node.conclusion:
            diags.append(
                f"{path}: {node.rule}: stated conclusion '{print_sequent(node.conclusion)}'"
                f" but rule yields '{print_sequent(expected)}'"
            )

    walk(p, "root")
    return diags


def open_premises(p: Proof) -> list[Sequent]:
    """PREMISE leaf sequents in left-to-right tree order."""
    out: list[Sequent] = []

    def walk(node: Proof):
        if node.rule == PREMISE:
            out.append(node.conclusion)
        for q in node.premises:
            walk(q)

    walk(p)
    return out


def uses_only(p: Proof, rules: set[str]) -> bool:
    return p.rule in rules and all(uses_only(q, rules) for q in p.premises)


# ---------------------------------------------------------------------------
# derived-rule expansion

def _chain(t: Proof, rules: list[str]) -> Proof:
    for r in rules:
        t = make(r, (), (t,))
    return t


def _expand_tensor_r(l: Proof, r: Proof) -> Proof:
    a = l.conclusion.succedent[-1]
    b = r.conclusion.succedent[0]
    n_d1 = len(l.conclusion.succedent) - 1
    n_d2 = len(r.conclusion.succedent) - 1
    n_g2 = len(r.conclusion.antecedent)

    t = make(TENSOR_L_ELIM, (0,), (axiom(Tensor(a, b)),))  # A, B |- A(x)B
    t = make("n2-intro", (), (t,))                         # B |- A^, A(x)B
    q2 = _chain(r, ["n1-intro"] * n_d2)                    # G2, D2^.. |- B
    t = cut(b, q2, t)
    t = make("n2-elim", (), (t,))                          # A, G2, D2^.. |- A(x)B
    t = _chain(t, ["n1-elim"] * n_d2)                      # A, G2 |- A(x)B, D2
    q1 = _chain(l, ["n3-intro"] * n_d1)                    # ^D1.., G1 |- A
    t = _chain(t, ["n4-intro"] * n_g2)                     # A |- A(x)B, D2, ^G2..
    t = cut(a, q1, t)
    t = _chain(t, ["n4-elim"] * n_g2)
    t = _chain(t, ["n3-elim"] * n_d1)                      # G1, G2 |- D1, A(x)B, D2
    return t


def _expand_par_l(l: Proof, r: Proof) -> Proof:
    a = l.conclusion.antecedent[-1]
    b = r.conclusion.antecedent[0]
    n_g1 = len(l.conclusion.antecedent) - 1
    n_g2 = len(r.conclusion.antecedent) - 1
    n_d1 = len(l.conclusion.succedent)

    t = make(PAR_R_ELIM, (0,), (axiom(Par(a, b)),))        # A(+)B |- A, B
    t = make("n1-intro", (), (t,))                         # A(+)B, B^ |- A
    q1 = _chain(l, ["n2-intro"] * n_g1)                    # A |- G1^.., D1
    t = cut(a, t, q1)                                      # A(+)B, B^ |- G1^.., D1
    t = _chain(t, ["n2-elim"] * n_g1)                      # G1, A(+)B, B^ |- D1
    t = make("n1-elim", (), (t,))                          # G1, A(+)B |- D1, B
    q2 = _chain(r, ["n4-intro"] * n_g2)                    # B |- D2, ^G2..
    t = _chain(t, ["n3-intro"] * n_d1)                     # ^D1.., G1, A(+)B |- B
    t = cut(b, t, q2)
    t = _chain(t, ["n4-elim"] * n_g2)
    t = _chain(t, ["n3-elim"] * n_d1)                      # G1, A(+)B, G2 |- D1, D2
    return t


def _expand_cut_general(f: Formula, pos: int, l: Proof, r: Proof) -> Proof:
    n_l1 = pos
    n_l2 = len(r.conclusion.antecedent) - pos - 1
    t = _chain(r, ["n2-intro"] * n_l1)                     # f, L2 |- L1^.., Th
    t = _chain(t, ["n4-intro"] * n_l2)                     # f |- L1^.., Th, ^L2..
    t = cut(f, l, t)                                       # G |- L1^.., Th, ^L2..
    t = _chain(t, ["n4-elim"] * n_l2)
    t = _chain(t, ["n2-elim"] * n_l1)                      # L1, G, L2 |- Th
    return t


def expand_derived(p: Proof) -> Proof:
    """Rewrite derived rules into the basis; basis proofs come back unchanged.

    The expansion starts from an AXIOM on the introduced formula,
    strips it with the core elimination rule, and splices the premises
    in with minimal cuts, using negation rules to move contexts out of
    the way and back.  Conclusions and open premises are preserved.
    """
    prem = tuple(expand_derived(q) for q in p.premises)
    if p.rule in BASIS_RULES:
        if prem == p.premises:
            return p
        return make(p.rule, p.args, prem)
    if p.rule == TENSOR_R:
        return _expand_tensor_r(*prem)
    if p.rule == PAR_L:
        return _expand_par_l(*prem)
    if p.rule == I_R:
        return make(I_L_ELIM, (0,), (axiom(UnitI()),))
    if p.rule == BOT_L:
        return make(BOT_R_ELIM, (0,), (axiom(UnitBot()),))
    if p.rule == CUT_GENERAL:
        f, pos = p.args
        return _expand_cut_general(f, pos, *prem)
    raise RuleError(f"unknown rule {p.rule!r}")


# ---------------------------------------------------------------------------
# proof file format: one step per line,
#   label: <sequent> ; <rule> <args> <premise labels>
# '#' starts a comment; the last line is the conclusion of the proof.

def parse_proof(text: str) -> Proof:
    steps: dict[str, Proof] = {}
    last: Proof | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, body = line.split(":", 1)
            seq_text, rule_text = body.split(";", 1)
        except ValueError:
            raise ParseError(f"malformed step line {lineno}", raw, 0) from None
        label = head.strip()
        if not label:
            raise ParseError(f"missing label on line {lineno}", raw, 0)
        if label in steps:
            raise ParseError(f"duplicate label {label!r} on line {lineno}", raw, 0)
        seq = parse_sequent(seq_text)
        toks = rule_text.split()
        if not toks:
            raise ParseError(f"missing rule on line {lineno}", raw, 0)
        rule = RULE_ALIASES.get(toks[0].lower(), toks[0].lower())
        if rule not in RULE_SIGNATURES:
            raise ParseError(f"unknown rule {toks[0]!r} on line {lineno}", raw, 0)
        n_prem, argsig = RULE_SIGNATURES[rule]
        rest = toks[1:]
        if len(rest) < n_prem:
            raise ParseError(f"{rule} needs {n_prem} premise labels (line {lineno})", raw, 0)
        labels = rest[len(rest) - n_prem:] if n_prem else []
        argtoks = rest[: len(rest) - n_prem]
        args: list = []
        if rule == PREMISE:
            args = [seq]
            if argtoks:
                raise ParseError(f"premise takes no arguments (line {lineno})", raw, 0)
        elif argsig == "f":
            args = [parse_formula(" ".join(argtoks))]
        elif argsig == "i":
            if len(argtoks) != 1:
                raise ParseError(f"{rule} takes one position argument (line {lineno})", raw, 0)
            args = [int(argtoks[0])]
        elif argsig == "fi":
            if len(argtoks) < 2:
                raise ParseError(f"{rule} takes a formula and a position (line {lineno})", raw, 0)
            args = [parse_formula(" ".join(argtoks[:-1])), int(argtoks[-1])]
        elif argtoks:
            raise ParseError(f"{rule} takes no arguments (line {lineno})", raw, 0)
        prem = []
        for lab in labels:
            if lab not in steps:
                raise ParseError(f"dangling label {lab!r} on line {lineno}", raw, 0)
            prem.append(steps[lab])
        node = Proof(rule, tuple(args), tuple(prem), seq)
        steps[label] = node
        last = node
    if last is None:
        raise ParseError("empty proof script", text, 0)
    return last


def print_proof(p: Proof) -> str:
    """Serialize a proof in the step-per-line format (labels s0, s1, ...)."""
    lines: list[str] = []
    labels: dict[int, str] = {}

    def walk(node: Proof) -> str:
        if id(node) in labels:
            return labels[id(node)]
        prem_labels = [walk(q) for q in node.premises]
        lab = f"s{len(lines)}"
        labels[id(node)] = lab
        if node.rule == PREMISE:
            argtext = ""
        else:
            parts = []
            for a in node.args:
                parts.append(print_formula(a) if isinstance(a, Formula) else str(a))
            argtext = " ".join(parts)
        tail = " ".join(x for x in [argtext, " ".join(prem_labels)] if x)
        rule_part = f"{node.rule} {tail}".strip()
        lines.append(f"{lab}: {print_sequent(node.conclusion)} ; {rule_part}")
        return lab

    walk(p)
    return "\n".join(lines) + "\n"
