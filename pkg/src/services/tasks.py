"""Conversion between task / instance files and domain objects."""

import json
import logging
from pathlib import Path
from typing import Mapping, Optional, Union

from src.models.errors import InvalidRequest, SignatureMismatch
from src.models.schemas import (
    BaseSpec,
    ExamplePayload,
    ExampleSpec,
    InstanceFile,
    PossibilitySpec,
    Setting,
    TaskFile,
)
from src.services.compat import Payload, Possibilities, Possibility, TheoryExample
from src.services.logic_core import HerbrandBase, Interpretation
from src.services.model_engine import ExtendedExample
from src.services.parser import parse_atom, parse_theory, serialize_theory
from src.services.reductions import LabeledExample, LearningTask

logger = logging.getLogger(__name__)


def build_base(spec: BaseSpec, signature: Mapping[str, int]) -> HerbrandBase:
    """Herbrand base of the selected predicates (all by default) over the declared constants."""
    names = signature if spec.predicates is None else spec.predicates
    selected = {}
    for name in names:
        if name not in signature:
            raise SignatureMismatch(f"predicate {name} is not in the signature", predicate=name)
        selected[name] = signature[name]
    for name, arity in spec.extra_predicates.items():
        if name in signature and signature[name] != arity:
            raise SignatureMismatch(f"predicate {name} redeclared with arity {arity}", predicate=name)
        selected[name] = arity
    return HerbrandBase.build(selected, spec.constants)


def base_to_spec(hb: HerbrandBase, signature: Mapping[str, int]) -> BaseSpec:
    predicates = [p for p, _ in hb.signature if p in signature]
    extra = {p: a for p, a in hb.signature if p not in signature}
    return BaseSpec(constants=list(hb.constants), predicates=predicates, extra_predicates=extra)


def _require(value, field: str, setting: Setting):
    if value is None:
        raise InvalidRequest(f"payload field '{field}' is required for setting {setting.value}", field=field)
    return value


def build_payload(
    payload: ExamplePayload,
    base_spec: BaseSpec,
    setting: Setting,
    signature: Mapping[str, int],
) -> Payload:
    """Domain payload of one example, shaped by the setting."""
    base = build_base(base_spec, signature)
    if setting is Setting.INTERPRETATIONS:
        atoms = frozenset(parse_atom(text) for text in _require(payload.true_atoms, "true_atoms", setting))
        return Interpretation(base, atoms)
    if setting is Setting.POSSIBILITIES:
        items = _require(payload.possibilities, "possibilities", setting)
        return Possibilities(tuple(
            Possibility(
                parse_theory(p.theory),
                base if p.base is None else build_base(p.base, signature),
                p.weight,
            )
            for p in items
        ))
    theory = parse_theory(_require(payload.theory, "theory", setting))
    if setting is Setting.ASSUMPTION_BASED:
        extended = build_base(_require(payload.extended_base, "extended_base", setting), signature)
        assumption = None
        if payload.assumption_base is not None:
            assumption = build_base(payload.assumption_base, signature)
        return ExtendedExample(theory, extended, base, assumption)
    return TheoryExample(theory, base)


def to_task(data: TaskFile) -> LearningTask:
    examples = tuple(
        LabeledExample(
            build_payload(spec.payload, spec.base, data.setting, data.signature),
            spec.label,
            spec.name,
        )
        for spec in data.examples
    )
    return LearningTask.of(
        data.setting,
        data.signature,
        examples,
        space=data.hypothesis_space,
        learner=data.learner,
    )


def read_json(path: Union[str, Path]) -> str:
    return Path(path).read_text(encoding="utf-8")


def load_task(path: Union[str, Path]) -> LearningTask:
    """Validate and convert a task file."""
    data = TaskFile.model_validate_json(read_json(path))
    logger.debug("loaded %s task with %d examples from %s", data.setting.value, len(data.examples), path)
    return to_task(data)


def load_instance(path: Union[str, Path], setting: Setting) -> Payload:
    """Payload of a single instance file under the given setting."""
    data = InstanceFile.model_validate_json(read_json(path))
    return build_payload(data.payload, data.base, setting, data.signature)


def _payload_to_spec(payload: Payload, signature: Mapping[str, int]) -> tuple[BaseSpec, ExamplePayload]:
    if isinstance(payload, Interpretation):
        return base_to_spec(payload.base, signature), ExamplePayload(
            true_atoms=[str(a) for a in payload.sorted_atoms()]
        )
    if isinstance(payload, Possibilities):
        base = payload.items[0].base
        return base_to_spec(base, signature), ExamplePayload(possibilities=[
            PossibilitySpec(
                theory=serialize_theory(p.theory),
                base=None if p.base == base else base_to_spec(p.base, signature),
                weight=p.weight,
            )
            for p in payload.items
        ])
    if isinstance(payload, ExtendedExample):
        return base_to_spec(payload.learning_base, signature), ExamplePayload(
            theory=serialize_theory(payload.theory),
            extended_base=base_to_spec(payload.extended_base, signature),
            assumption_base=None if payload.assumption_base is None
            else base_to_spec(payload.assumption_base, signature),
        )
    return base_to_spec(payload.base, signature), ExamplePayload(theory=serialize_theory(payload.theory))


def task_to_file(task: LearningTask) -> TaskFile:
    """Task file of a domain task; bases are written as predicates over constants."""
    signature = task.arities
    examples = []
    for example in task.examples:
        base, payload = _payload_to_spec(example.payload, signature)
        examples.append(ExampleSpec(name=example.name, label=example.label, base=base, payload=payload))
    return TaskFile(
        setting=task.setting,
        signature=signature,
        examples=examples,
        hypothesis_space=task.space,
        learner=task.learner,
    )


def dump_task(task: LearningTask, path: Optional[Union[str, Path]] = None) -> str:
    """JSON text of a task, written to path when one is given."""
    text = json.dumps(task_to_file(task).model_dump(mode="json", exclude_none=True), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
