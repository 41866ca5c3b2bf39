#!/usr/bin/env python3
"""Writes the proof fixtures lemma-a1.json and neg-phi.json.

Every step is spelled out; the checker replays them line by line.
Usage: gen_proofs.py [output_dir]   (default: fixtures/)
"""
import json
import os
import sys


def par(s):
    return "(" + s + ")"


def cf(a, b):
    return par(par(a) + " ~> " + par(b))


def imp(a, b):
    return par(par(a) + " -> " + par(b))


def iff(a, b):
    return par(par(a) + " <-> " + par(b))


def conj(a, b):
    return par(par(a) + " & " + par(b))


def disj(a, b):
    return par(par(a) + " | " + par(b))


def neg(a):
    return "!" + par(a)


def chain(premises, goal):
    """p1 -> (p2 -> (... -> goal))"""
    out = goal
    for p in reversed(premises):
        out = imp(p, out)
    return out


class Proof:
    def __init__(self):
        self.lines = []

    def add(self, formula, by):
        self.lines.append({"formula": formula, "by": by})
        return len(self.lines)  # 1-based

    def axiom(self, schema, formula, **subst):
        by = {"kind": "axiom", "schema": schema}
        if subst:
            by["subst"] = subst
        return self.add(formula, by)

    def taut(self, formula):
        return self.add(formula, {"kind": "taut"})

    def mp(self, premise, implication, formula):
        return self.add(formula, {"kind": "mp", "from": [premise, implication]})

    def ra(self, rule, formula, premise=None):
        by = {"kind": rule}
        if premise is None:
            by["premise"] = "taut"
        else:
            by["from"] = premise
        return self.add(formula, by)

    def formula(self, n):
        return self.lines[n - 1]["formula"]

    def discharge(self, premises, goal):
        """Tautology chaining premise lines into goal, then one MP per premise."""
        forms = [self.formula(p) for p in premises]
        t = self.taut(chain(forms, goal))
        cur = chain(forms, goal)
        last = t
        for i, p in enumerate(premises):
            cur = chain(forms[i + 1:], goal)
            last = self.mp(p, last, cur)
        return last


def lemma(pr, p1, p2, p3):
    """(p1 ~> p2) & (p2 ~> p3) -> (p1 | p2 ~> p3); returns the final line."""
    d = disj(p1, p2)
    # (p1 ~> p2) -> (p1 | p2 ~> p2), from A1 and A4
    l1 = pr.axiom("A1", cf(p2, p2), phi=p2)
    l2 = pr.axiom("A4", imp(conj(cf(p1, p2), cf(p2, p2)), cf(d, p2)), phi1=p1, phi2=p2, psi=p2)
    eq1 = pr.discharge([l1, l2], imp(cf(p1, p2), cf(d, p2)))
    # (p2 ~> p3) -> (p1 | p2 ~> (p2 -> p3))
    a = conj(p1, neg(p2))
    q = imp(p2, p3)
    la1 = pr.axiom("A1", cf(a, a), phi=a)
    la2 = pr.ra("ra2", imp(cf(a, a), cf(a, q)))
    la = pr.mp(la1, la2, cf(a, q))
    lb = pr.ra("ra2", imp(cf(p2, p3), cf(p2, q)))
    l4 = pr.axiom("A4", imp(conj(cf(a, q), cf(p2, q)), cf(disj(a, p2), q)), phi1=a, phi2=p2, psi=q)
    l5 = pr.ra("ra1", imp(cf(disj(a, p2), q), cf(d, q)))
    eq2 = pr.discharge([la, lb, l4, l5], imp(cf(p2, p3), cf(d, q)))
    # A2, then weaken p2 & (p2 -> p3) to p3
    l6 = pr.axiom("A2", imp(conj(cf(d, p2), cf(d, q)), cf(d, conj(p2, q))), phi=d, psi1=p2, psi2=q)
    l7 = pr.ra("ra2", imp(cf(d, conj(p2, q)), cf(d, p3)))
    return pr.discharge([eq1, eq2, l6, l7], imp(conj(cf(p1, p2), cf(p2, p3)), cf(d, p3)))


BASE_AX = {"axioms": ["A0", "A1", "A2", "A3", "A4", "A5", "A6"], "rules": ["MP", "RA1", "RA2"]}
BASE_PLUS = {"axioms": BASE_AX["axioms"] + ["V2", "V3"], "rules": BASE_AX["rules"]}
SIGNATURE = {"X1": [0, 1], "X2": [0, 1], "X3": [0, 1]}


def atom(i, v):
    return "X%d=%d" % (i, v)


def lemma_script():
    pr = Proof()
    lemma(pr, atom(1, 1), atom(2, 1), atom(3, 1))
    return {"name": "lemma-a1", "base": BASE_AX, "signature": SIGNATURE, "lines": pr.lines}


def neg_phi_script():
    pr = Proof()
    c = {
        1: cf(atom(1, 1), conj(atom(2, 1), atom(3, 0))),
        2: cf(atom(2, 1), conj(atom(3, 1), atom(1, 0))),
        3: cf(atom(3, 1), conj(atom(1, 1), atom(2, 0))),
    }
    phi = conj(conj(c[1], c[2]), c[3])
    one = {i: atom(i, 1) for i in (1, 2, 3)}
    psi = disj(disj(one[1], one[2]), one[3])

    # From phi: Xi=1 ~> Xj=1 along the cycle 1 -> 2 -> 3 -> 1, and Xi=1 ~> Xk=0.
    def weak(i, target):
        return pr.ra("ra2", imp(c[i], cf(one[i], target)))

    succ = {1: 2, 2: 3, 3: 1}
    zero_of = {1: 3, 2: 1, 3: 2}  # Xi=1 ~> X(zero_of[i])=0
    goals = {}
    for k in (1, 2, 3):
        # start so that the chain ends at the conjunct that sets Xk to 0
        last = [i for i in (1, 2, 3) if zero_of[i] == k][0]
        first = succ[last]
        mid = succ[first]
        e1 = weak(first, one[mid])
        e2 = weak(mid, one[last])
        e3 = weak(last, atom(k, 0))
        l1 = lemma(pr, one[first], one[mid], one[last])
        d1 = disj(one[first], one[mid])
        l2 = lemma(pr, d1, one[last], atom(k, 0))
        d2 = disj(d1, one[last])
        g2 = cf(d2, atom(k, 0))
        r = [] if d2 == psi else [pr.ra("ra1", imp(g2, cf(psi, atom(k, 0))))]
        # phi is the conjunction of the three conjuncts; the tautology splits it.
        goals[k] = pr.discharge([e1, e2, e3, l1, l2] + r, imp(phi, cf(psi, atom(k, 0))))

    z = conj(conj(atom(1, 0), atom(2, 0)), atom(3, 0))
    a21 = pr.axiom("A2", imp(conj(cf(psi, atom(1, 0)), cf(psi, atom(2, 0))), cf(psi, conj(atom(1, 0), atom(2, 0)))),
                   phi=psi, psi1=atom(1, 0), psi2=atom(2, 0))
    a22 = pr.axiom("A2", imp(conj(cf(psi, conj(atom(1, 0), atom(2, 0))), cf(psi, atom(3, 0))), cf(psi, z)),
                   phi=psi, psi1=conj(atom(1, 0), atom(2, 0)), psi2=atom(3, 0))
    eq3 = pr.discharge([goals[1], goals[2], goals[3], a21, a22], imp(phi, cf(psi, z)))

    v2 = [pr.axiom("V2", imp(atom(i, 1), neg(atom(i, 0)))) for i in (1, 2, 3)]
    n = disj(disj(neg(atom(1, 0)), neg(atom(2, 0))), neg(atom(3, 0)))
    pn = pr.discharge(v2, imp(psi, n))
    a1 = pr.axiom("A1", cf(psi, psi), phi=psi)
    r2 = pr.ra("ra2", imp(cf(psi, psi), cf(psi, n)), premise=pn)
    eq4 = pr.mp(a1, r2, cf(psi, n))
    a2 = pr.axiom("A2", imp(conj(cf(psi, z), cf(psi, n)), cf(psi, conj(z, n))), phi=psi, psi1=z, psi2=n)
    rf = pr.ra("ra2", imp(cf(psi, conj(z, n)), cf(psi, "false")))
    to_false = pr.discharge([eq3, eq4, a2, rf], imp(phi, cf(psi, "false")))

    # psi ~> false gives X1=1 ~> false, which V3 rules out.
    q1 = pr.ra("ra2", imp(cf(psi, "false"), cf(psi, one[1])))
    a3 = pr.axiom("A3", imp(conj(cf(psi, one[1]), cf(psi, "false")), cf(conj(psi, one[1]), "false")),
                  phi1=psi, phi2=one[1], psi="false")
    r1 = pr.ra("ra1", imp(cf(conj(psi, one[1]), "false"), cf(one[1], "false")))
    v3 = pr.axiom("V3", "![X1<-1]false")
    pr.discharge([to_false, q1, a3, r1, v3], neg(phi))
    return {"name": "neg-phi", "base": BASE_PLUS, "signature": SIGNATURE, "lines": pr.lines}


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    os.makedirs(out, exist_ok=True)
    for script in (lemma_script(), neg_phi_script()):
        with open(os.path.join(out, script["name"] + ".json"), "w") as f:
            json.dump(script, f, indent=1)
            f.write("\n")


if __name__ == "__main__":
    main()
