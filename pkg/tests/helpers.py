"""Assertion helpers shared by the test modules."""


def atom_sets(interpretations) -> list[set[str]]:
    """True atoms of each interpretation, as sets of atom text."""
    return [{str(a) for a in i.true_atoms} for i in interpretations]
