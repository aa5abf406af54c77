"""
Sharing a reward down an invitation tree
========================================

A sponsor hands out a fixed reward to the people who spread the word about
her sale.  Each agent's cut depends on where she sits in the *critical
tree* — the tree in which an agent's parent is the nearest person whose
silence would have kept her out of the market — and on a split parameter
``alpha`` that trades off inviting well-connected people against inviting
many people.

This script builds an 18-agent invitation tree, prints every agent's
exact coefficient, and shows how the split moves as ``alpha`` varies.
All arithmetic is exact rational arithmetic; the coefficients of any
nonempty tree sum to 1 as an identity, not merely up to rounding.
"""

from fractions import Fraction

from netredist import (
    SharingParams,
    critical_tree,
    induce_graph,
    prst,
    share_totals,
)
from netredist.profiles import AgentType, make_profile
from netredist.render import decimal_str


def build_tree():
    """An 18-agent network: branch A holds a chain of sub-inviters, branch
    P is a wide shallow crowd, branch Q is a single agent."""
    one = Fraction(1)
    reports = {
        "A": AgentType(one, frozenset({"B", "Ac", "Ad"})),
        "B": AgentType(one, frozenset({"Ba", "Bb"})),
        "Ac": AgentType(one, frozenset()),
        "Ad": AgentType(one, frozenset()),
        "Ba": AgentType(one, frozenset()),
        "Bb": AgentType(one, frozenset()),
        "P": AgentType(one, frozenset(f"P{k}" for k in range(10))),
        "Q": AgentType(one, frozenset()),
    }
    reports.update({f"P{k}": AgentType(one, frozenset()) for k in range(10)})
    return make_profile(["A", "P", "Q"], reports)


profile = build_tree()
tree = critical_tree(induce_graph(profile))

print("critical tree (agent <- parent):")
for agent in tree.agents:
    print(f"  {agent:3} <- {tree.parent[agent]}")

# ----------------------------------------------------------------------
# With alpha = 1/2 the reward splits between a "basic" part, driven by how
# many descendants an agent's siblings brought, and a "diffusion" part
# that grows with her own subtree.

shares = prst(tree, SharingParams.of(Fraction(1, 2)))
print("\ncoefficients at alpha = 1/2:")
for agent in tree.agents:
    omega = shares.omega[agent]
    print(f"  {agent:3}  omega = {str(omega):8}  ({decimal_str(omega, 4)})")
print("  total:", share_totals(shares))  # exactly 1

# ----------------------------------------------------------------------
# Raising alpha rewards agents whose subtrees are large; lowering it
# spreads the reward towards the deeper agents those subtrees contain.

print("\nagent A's coefficient as alpha moves:")
for num in (1, 3, 5, 7, 9):
    alpha = Fraction(num, 10)
    omega = prst(tree, SharingParams.of(alpha)).omega["A"]
    print(f"  alpha = {str(alpha):5}  omega_A = {decimal_str(omega, 4)}")
