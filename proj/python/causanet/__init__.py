"""Petri-net simulation and causal-formalism toolkit.

The heavy lifting lives in the C++ extension ``_causanet``; this package
re-exports its surface.
"""

from ._causanet import (  # noqa: F401
    AdverbDistribution,
    ChainGraph,
    Document,
    FcmRun,
    FuzzyCognitiveMap,
    FuzzyLabel,
    Marking,
    NetDef,
    NeuronDiagram,
    ReachabilityGraph,
    Scenario,
    SimTrace,
    __version__,
    build_scenario,
    chain_probability,
    check_scenario,
    classify_transition,
    detect_deadlocks,
    enabled_transitions,
    export_dot,
    fcm_run,
    fire,
    fuse_adverbs,
    fuzzy_event_probability,
    is_k_bounded,
    neuron_evaluate,
    parse,
    qm_minimize,
    reachability_graph,
    run,
    scenario_names,
    serialize,
    tconorm,
    tnorm,
    trace_to_text,
    validate,
)
