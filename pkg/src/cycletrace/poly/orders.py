"""Monomial orders.

An order is turned into a key function on exponent tuples; larger keys are
larger monomials.  Keys are flat tuples of ints so they can be negated for
heap use.
"""

from .polynomial import grevlex_key


def lex_key(e):
    return tuple(e)


_KEYS = {"grevlex": grevlex_key, "lex": lex_key}


class Order:
    """A monomial order, optionally split into variable blocks.

    ``Order("grevlex")`` and ``Order("lex")`` act on the ring's variable
    list as given.  ``Order.block(["x", "y"], ["s"])`` compares the first
    block first (each block with ``inner``); variables not named in any
    block are appended to the last block.
    """

    def __init__(self, name="grevlex", blocks=None, inner="grevlex"):
        if name not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {name!r}")
        if inner not in _KEYS:
            raise ValueError(f"unknown monomial order {inner!r}")
        self.name = name
        self.blocks = tuple(tuple(b) for b in blocks) if blocks else None
        self.inner = inner

    @classmethod
    def block(cls, *blocks, inner="grevlex"):
        return cls("block", blocks, inner)

    def arrange(self, variables):
        """Order a variable collection into the ring variable list."""
        variables = list(dict.fromkeys(variables))
        if self.name != "block":
            return tuple(variables)
        named = [v for b in self.blocks for v in b]
        extra = [v for v in variables if v not in named]
        return tuple(named + extra)

    def key_for(self, gens):
        """Key function for exponent tuples over ``gens``."""
        if self.name != "block":
            return _KEYS[self.name]
        sizes = [len(b) for b in self.blocks]
        sizes[-1] += len(gens) - sum(sizes)
        if sizes[-1] < 0:
            raise ValueError("ring has fewer variables than the blocks name")
        inner = _KEYS[self.inner]
        cuts = []
        start = 0
        for s in sizes:
            cuts.append((start, start + s))
            start += s

        def key(e):
            out = ()
            for a, b in cuts:
                out += inner(e[a:b])
            return out
        return key

    def __eq__(self, other):
        return (isinstance(other, Order) and self.name == other.name
                and self.blocks == other.blocks and self.inner == other.inner)

    def __hash__(self):
        return hash((self.name, self.blocks, self.inner))

    def __repr__(self):
        if self.name == "block":
            return f"Order.block({', '.join(map(repr, map(list, self.blocks)))})"
        return f"Order({self.name!r})"


GREVLEX = Order("grevlex")
LEX = Order("lex")
