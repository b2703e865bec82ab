"""
The G_0(9) model and the frame action
=====================================

``G_0(9)`` is the class-two nilpotent group on ``u_1 .. u_8`` with
``[u_i, u_j] = tau`` for neighbouring indices.  The frame generators
``X_k`` of B_9 act on it by the case list ``u_k -> u_k tau``,
``u_{k+-1} -> u_k u_{k+-1}`` and ``u_i -> u_i`` otherwise.

Evaluating that case list shows that it does not respect the braid
relation ``X_k X_{k+1} X_k = X_{k+1} X_k X_{k+1}``.  Flipping the sign on
the lower neighbour repairs the braid relations but not the transversal
commutators.  Reducing exponents mod 2, every relation holds for both
case lists.
"""

from vklab.braid import BraidWord, halftwist_to_word
from vklab.btilde import (
    G0Element,
    default_quadrangles,
    default_transversal_samples,
    prime_check,
    quadrangle_check,
    theorem1_action,
    verify_action_well_defined,
)

N = 9
u = lambda i: G0Element.u(N, i)  # noqa: E731
tau = G0Element.central(N)

print("u1 u2 =", u(1) * u(2), "   u2 u1 =", u(2) * u(1))
print("u1 u3 =", u(1) * u(3), "   u3 u1 =", u(3) * u(1))
for k in (3, 7, 4):
    print(f"(u3)_X{k} =", theorem1_action(BraidWord(N, (k,)), u(3)))

print()
for variant in ("literal", "signed"):
    rep = verify_action_well_defined(N, variant=variant)
    kinds = {}
    for c in rep.failures():
        key = c.name.rsplit("_", 2)[0] if c.name.startswith(("braid", "far")) else "transversal_commutator"
        kinds[key] = kinds.get(key, 0) + 1
    print(f"{variant:8s} {len(rep.failures())} of {len(rep.checks)} checks fail {kinds}")
    if rep.failures():
        print("         e.g.", rep.failures()[0])


def mod2(g):
    return tuple(e % 2 for e in g.exponents)


def acts_trivially_mod2(w, variant):
    return all(mod2(theorem1_action(w, u(i), variant)) == mod2(u(i)) for i in range(1, N))


# The relations as words that should act trivially.
relators = [BraidWord(N, (k, k + 1, k, -(k + 1), -k, -(k + 1))) for k in range(1, N - 1)]
relators += [BraidWord(N, (k, l, -k, -l)) for k in range(1, N) for l in range(k + 2, N)]
for p, q in default_transversal_samples(N):
    x, y = halftwist_to_word(p), halftwist_to_word(q)
    relators.append(x * y * x.inverse() * y.inverse())
for q in default_quadrangles(N):
    h = [halftwist_to_word(x) ** 2 for x in q]
    relators.append(h[0] * h[2] * (h[1] * h[3]).inverse())

print()
for variant in ("literal", "signed"):
    ok = sum(acts_trivially_mod2(w, variant) for w in relators)
    print(f"{variant:8s} mod 2: {ok} of {len(relators)} relations (including quadrangles) act trivially")

print()
q = default_quadrangles(N)[0]
print("quadrangle", " ".join(str(x) for x in q))
print(quadrangle_check(*q))
print()
print("prime element checks for u3 supported on X3:")
print(prime_check(u(3), 3, tau))
