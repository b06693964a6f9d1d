"""rna: candidate structures of an RNA sequence and pattern compatibility."""

import argparse

from src.commands.common import EXIT_OK, read_text
from src.models.schemas import Route, RnaInputFile, Setting, Sign
from src.services.compat import compatible
from src.services.learner import weighted_model_probability
from src.services.parser import parse_patterns, serialize_dnf
from src.services.rna_ingest import (
    PalindromeSet,
    build_rna_example,
    maximal_compatible_subsets,
    structure_possibilities,
    top_k_structures,
)


def register(subparsers) -> None:
    parser = subparsers.add_parser("rna", help="Build RNA structure candidates and check patterns")
    parser.add_argument("--input", required=True, help="Palindrome annotation file (JSON)")
    parser.add_argument("--top-k", type=int, default=None, help="Keep only the k most probable structures")
    parser.add_argument("--patterns", default=None, help="Pattern file, one DNF per line")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    ps = PalindromeSet.from_file(RnaInputFile.model_validate_json(read_text(args.input)))
    candidates = maximal_compatible_subsets(ps)
    print(f"structures: {len(candidates)}")
    for index, candidate in enumerate(candidates):
        print(f"[{index}] helices: {', '.join(candidate.helices)}")
        print(f"    relations: {', '.join(str(a) for a in candidate.sorted_relations())}")

    possibilities = None
    if args.top_k is not None:
        top = top_k_structures(ps, args.top_k)
        possibilities = top.possibilities
        kept = ", ".join(str(i) for i in top.indices)
        print(f"top-{args.top_k}: kept [{kept}], retained mass {top.retained_mass:.6g}")
    elif ps.weights is not None:
        possibilities = structure_possibilities(ps)

    if args.patterns is None:
        return EXIT_OK
    example = build_rna_example(ps)
    print("pattern | verdict | probability")
    for pattern in parse_patterns(read_text(args.patterns)):
        verdict = compatible(pattern, example, Setting.ASSUMPTION_BASED, Sign.POSITIVE, Route.SUBBASE)
        probability = "-"
        if possibilities is not None:
            probability = f"{weighted_model_probability(pattern, possibilities):.6g}"
        print(f"{serialize_dnf(pattern)} | {'compatible' if verdict else 'incompatible'} | {probability}")
    return EXIT_OK
