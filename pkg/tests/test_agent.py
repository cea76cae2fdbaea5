import pytest

from exlen.errors import EnumerationLimitError
from exlen.models import RunConfig
from exlen.services.agent import Executor, Memory, Planner, Task


@pytest.fixture
def config():
    return RunConfig(command="report")


def test_task_dependencies_default_to_empty():
    assert Task(name="x", tool="model", params={}).dependencies == []


def test_load_plan(corpus_dir):
    tasks = Planner().plan_load(corpus_dir / "mod_ka2.json")
    assert [t.name for t in tasks] == ["presentation", "validation"]
    assert tasks[1].dependencies == ["presentation"]


def test_report_plan_orders_dependencies_first(corpus_dir):
    tasks = Planner().plan_report(corpus_dir / "mod_ka2.json")
    seen = set()
    for task in tasks:
        assert set(task.dependencies) <= seen, task.name
        seen.add(task.name)
    assert {"tors_lattice", "torf_lattice", "duality", "tautilt"} <= seen


def test_executor_runs_a_plan(config, corpus_dir):
    planner = Planner()
    tasks = planner.plan_load(corpus_dir / "mod_ka2.json") + planner.plan_enumeration(["tors"])
    context = Executor(config).execute_plan(tasks)
    assert len(context["tors"]) == 5
    assert context["tors_lattice"].size == 5


def test_validation_failure_skips_dependents(config, corpus_dir):
    planner = Planner()
    executor = Executor(config)
    context = executor.execute_plan(planner.plan_load(corpus_dir / "broken_stability.json")
                                    + planner.plan_enumeration(["tors"]))
    assert "presentation" in context
    assert "tors" not in context
    assert list(executor.failures) == ["validation"]
    reports = executor.failure_reports()
    assert reports[0].name == "validation"
    assert reports[0].violations[0].rule == "stability equality"


def test_enumeration_failure_becomes_a_report(corpus_dir):
    executor = Executor(RunConfig(command="tors", max_indecs=3))
    planner = Planner()
    executor.execute_plan(planner.plan_load(corpus_dir / "a327.json") + planner.plan_enumeration(["tors"]))
    assert isinstance(executor.failures["tors"], EnumerationLimitError)
    assert executor.failure_reports()[0].violations[0].rule == "enumeration bound"


def test_unknown_tool(config):
    with pytest.raises(ValueError, match="Unknown tool"):
        Executor(config).execute_task(Task(name="x", tool="oracle", params={}), {})


def test_missing_dependency(config):
    task = Task(name="x", tool="model", params={"operation": "validate"}, dependencies=["presentation"])
    with pytest.raises(ValueError, match="depends on presentation"):
        Executor(config).execute_task(task, {})


def test_enumerations_are_cached_across_executors(config, corpus_dir):
    memory = Memory()
    planner = Planner()
    tasks = planner.plan_load(corpus_dir / "mod_ka2.json") + planner.plan_enumeration(["tors"])
    first = Executor(config, memory).execute_plan(tasks)
    second = Executor(config, memory).execute_plan(tasks)
    assert second["tors"] is first["tors"]
    assert second["tors_lattice"] is first["tors_lattice"]


def test_memory_keys_depend_on_options(ka2):
    memory = Memory()
    assert memory.get_artifact_key("tors", ka2, max_indecs=5) != memory.get_artifact_key("tors", ka2, max_indecs=6)
    key = memory.get_artifact_key("tors", ka2)
    memory.store_artifact(key, [1])
    assert memory.retrieve_artifact(key) == [1]
    memory.clear()
    assert memory.retrieve_artifact(key) is None


def test_lattice_keys_take_the_side_as_an_option(ka2):
    memory = Memory()
    tors_key = memory.get_artifact_key("lattice", ka2, kind="tors", max_indecs=22)
    torf_key = memory.get_artifact_key("lattice", ka2, kind="torf", max_indecs=22)
    assert tors_key != torf_key
    assert tors_key != memory.get_artifact_key("tors", ka2, max_indecs=22)
