"""Canonical values and grundy numbers of small Hackenbush stacks."""
import itertools

from gameseries import kernel as K
from gameseries.hackenbush import Edge, grundy, show_stack, stack_to_game

letters = [e for e in Edge]
seen = {}
for n in range(1, 4):
    for st in itertools.product(letters, repeat=n):
        c = K.canonical_form(stack_to_game(st))
        seen.setdefault(K.show(c), []).append(show_stack(st))

for val, stacks in sorted(seen.items(), key=lambda kv: -len(kv[1])):
    print(f"{val:24s} {len(stacks):4d}  e.g. {' '.join(stacks[:6])}")

print("green grundy:", [grundy((Edge.GREEN,) * n) for n in range(8)])
print("dark green grundy:", [grundy((Edge.DARK_GREEN,) * n) for n in range(8)])
