"""Statement catalog, instance families and the sweep engine."""
from .examples import ExampleItem, worked_examples, run_example
from .instances import (
    Instance,
    InstanceSpec,
    build_module,
    build_ring,
    parse_family,
    product_family,
    random_family,
    random_instance,
    zmod_family,
)
from .statements import ALL_IDS, AUX_IDS, CATALOG, OUT_OF_SCOPE, CORE_IDS, Case, get_statement
from .sweep import SweepReport, StatementStats, plan, recheck, sweep, verify_statement
