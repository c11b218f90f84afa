"""Walk through the type algebra: codes, function stacks, label spaces.

Run from the repository root after installing the package:

    python demos/01_type_algebra.py
"""

from mbtikit import labels as la

# The 16 four-letter codes combine four binary letters:
# I/E attitude, N/S perceiving preference, T/F judging preference,
# P/J orientation (which of the first two functions points outward).
print("all 16 type codes:")
print("  " + " ".join(la.ALL_CODES))

# Each code implies an ordered stack of four cognitive functions:
# dominant, auxiliary, tertiary, inferior. The famous pair of opposite
# types makes the derivation concrete:
print("\nfunction stacks for two opposite types:")
for code in ("ESFJ", "INTP"):
    stack = la.function_stack(la.parse_type(code))
    names = ", ".join(f.name for f in stack.functions)
    print(f"  {code}: {stack}  ({names})")

# The derivation in rules: with P at the end the extroverted slot takes
# the perceiving letter, with J the judging letter; extroverts lead with
# the extroverted function; tertiary/inferior are the opposites of
# auxiliary/dominant.
print("\nevery type, dominant first:")
for t in la.ALL_TYPES:
    print(f"  {t.code} -> {la.function_stack(t)}")

# Coarser label spaces group the 16 types. The dominant function gives
# 8 groups of 2; sharing the first two functions (in either order) also
# gives 8 groups of 2; each letter axis splits the types 8 vs 8.
print("\ndominant-function groups:")
for label, members in la.group_members(la.Granularity.DOMINANT8).items():
    print(f"  {label}: {' '.join(members)}")

print("\nfirst-two-function groups (ENFP and INFP share {Ne, Fi}):")
for label, members in la.group_members(la.Granularity.FIRST_TWO8).items():
    print(f"  {label}: {' '.join(members)}")

# Opposite types flip all four letters, and their stacks are mirror
# images of each other.
print("\nopposites reverse the stack:")
for code in ("INTP", "ENFJ"):
    t = la.parse_type(code)
    opp = la.opposite_type(t)
    print(f"  {code} {la.function_stack(t)}  <->  {opp.code} {la.function_stack(opp)}")

# The exported JSON document is the contract downstream trainers use to
# relabel records into any space without re-deriving stacks.
doc = la.export_label_spaces()
print("\nexported label spaces:", ", ".join(sorted(doc["spaces"])))
print("axis-tf mapping for INTP:", doc["spaces"]["axis-tf"]["mapping"]["INTP"])
