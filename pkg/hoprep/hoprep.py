import logging
import math
import time
from dataclasses import dataclass, field
from threading import Lock, Thread
from typing import Optional, Tuple

from .bce import run_bce
from .choldownload import ProblemDownload
from .cholparser import parse_problem
from .core import ClauseSet, Signature, UsageError
from .hlbe import DEFAULT_DEPTH, hlbe_simplify
from .pe import DEFAULT_KTOL, run_pe
from .qle import run_ple, run_qle
from .report import Report, TechniqueStats

logger = logging.getLogger(__name__)

TECHNIQUES = ("hlbe", "spe", "dpe", "ppe", "bce", "ple", "qle")
DEFAULT_TECHNIQUES = ("hlbe", "ppe", "bce", "qle")
DEFAULT_MAX_ROUNDS = 3

# Lock for result data
result_lock = Lock()
# Result data
result_store = {}
# Threads
threads = {}


@dataclass(frozen=True)
class PipelineConfig:
    """
    Settings of a preprocessing run.
    """

    techniques: Tuple[str, ...] = DEFAULT_TECHNIQUES
    ktol: float = DEFAULT_KTOL
    hlbe_depth: int = DEFAULT_DEPTH
    max_rounds: int = DEFAULT_MAX_ROUNDS
    check_ground: bool = False
    seed: Optional[int] = None
    output: Optional[str] = None
    stats: Optional[str] = None

    def __post_init__(self):
        techniques = ()
        for name in self.techniques:
            techniques += DEFAULT_TECHNIQUES if name == "all" else (name,)
        object.__setattr__(self, "techniques", techniques)
        if not techniques:
            raise UsageError("No technique selected!")
        for name in techniques:
            if name not in TECHNIQUES:
                raise UsageError(
                    "Unknown technique %s, expected one of %s" % (name, ", ".join(TECHNIQUES))
                )
        if self.max_rounds < 1:
            raise UsageError("max rounds must be at least 1, got %d" % self.max_rounds)
        if self.hlbe_depth < 1:
            raise UsageError("hlbe depth must be at least 1, got %d" % self.hlbe_depth)
        if self.ktol < 0 or (isinstance(self.ktol, float) and math.isnan(self.ktol)):
            raise UsageError("ktol must be a natural number or inf, got %s" % self.ktol)
        if self.stats not in (None, "text", "json"):
            raise UsageError("Unknown stats format %s" % self.stats)


def apply_technique(
    name: str, clauses: ClauseSet, config: PipelineConfig
) -> Tuple[ClauseSet, TechniqueStats]:
    """
    Run one technique to its own fixpoint.

    :param name: one of :data:`TECHNIQUES`
    :param clauses: the clause set
    :param config: settings
    :return: the new set and the technique's statistics
    """
    if name == "hlbe":
        return hlbe_simplify(clauses, depth=config.hlbe_depth)
    if name in ("spe", "dpe", "ppe"):
        branches = {"spe": ("spe",), "dpe": ("dpe",), "ppe": ("dpe", "spe")}[name]
        return run_pe(clauses, ktol=config.ktol, branches=branches, name=name)
    if name == "bce":
        return run_bce(clauses, seed=config.seed)
    if name == "ple":
        return run_ple(clauses, seed=config.seed)
    if name == "qle":
        return run_qle(clauses, seed=config.seed)
    raise UsageError("Unknown technique %s" % name)


def run_techniques(clauses: ClauseSet, config: PipelineConfig) -> Tuple[ClauseSet, Report]:
    """
    Apply the configured techniques in order, repeating the sequence until a
    round changes nothing, no clause is left, or ``max_rounds`` is reached.

    :param clauses: the clause set
    :param config: settings
    :return: the preprocessed set and the report
    """
    report = Report()
    started = time.perf_counter()

    for _ in range(config.max_rounds):
        report.rounds += 1
        before = clauses
        for name in config.techniques:
            clauses, stats = apply_technique(name, clauses, config)
            report.add(stats)
        if clauses == before or not clauses.clauses:
            break

    report.wall_time = time.perf_counter() - started
    logger.info("%d rounds, %d clauses left", report.rounds, len(clauses))
    return clauses, report


@dataclass
class PreprocessResult:
    signature: Signature
    clauses: ClauseSet
    report: Report = field(default_factory=Report)


def preprocess(
    url=None,
    file=None,
    string_content=None,
    techniques=None,
    ktol=DEFAULT_KTOL,
    hlbe_depth=DEFAULT_DEPTH,
    max_rounds=DEFAULT_MAX_ROUNDS,
    seed=None,
    http=None,
) -> PreprocessResult:
    """
    Load a problem and preprocess it.

    :param url: problem URL
    :param file: problem file path
    :param string_content: problem content as string
    :param techniques: technique names in application order, or ``["all"]``
    :param ktol: growth tolerance of predicate elimination
    :param hlbe_depth: chain depth for hidden literals
    :param max_rounds: number of times the technique sequence is repeated at most
    :param seed: shuffles candidate orders of bce, ple and qle
    :param http: urllib3 pool to download with
    :return: the signature, the preprocessed clauses and the report
    """
    config = PipelineConfig(
        techniques=tuple(techniques) if techniques else DEFAULT_TECHNIQUES,
        ktol=ktol,
        hlbe_depth=hlbe_depth,
        max_rounds=max_rounds,
        seed=seed,
    )

    content = None
    download = ProblemDownload(http=http)

    if url:
        content = download.data_from_url(url)

    if not content and file:
        content = download.data_from_file(file)

    if not content and string_content:
        content = download.data_from_string(string_content)

    if not content:
        raise IOError("No problem given!")

    _, clauses = parse_problem(content)
    clauses, report = run_techniques(clauses, config)
    return PreprocessResult(clauses.signature, clauses, report)


def request_data(key, kwargs):
    """
    Preprocess, store the result and remove this Thread from queue.

    :param key: key to get the result later
    :param kwargs: arguments of :func:`preprocess`
    """
    result = None

    try:
        result = preprocess(**kwargs)
    except Exception as e:
        logger.error("request %s failed: %s", key, e)
    finally:
        update_result(key, result)
        request_finished(key)


def preprocess_async(key, **kwargs):
    """
    Trigger an asynchronous preprocessing request.

    :param key: key to get the result later
    :param kwargs: arguments of :func:`preprocess`
    """
    t = Thread(target=request_data, args=(key, kwargs))

    with result_lock:
        if key not in threads:
            threads[key] = []

        threads[key].append(t)

        if not threads[key][0].is_alive():
            threads[key][0].start()


def request_finished(key):
    """
    Remove finished Thread from queue and start the next one.

    :param key: request key
    """
    with result_lock:
        threads[key] = threads.get(key, [])[1:]

        if threads[key]:
            threads[key][0].start()


def update_result(key, result):
    with result_lock:
        result_store[key] = result


def latest_result(key) -> Optional[PreprocessResult]:
    """
    Get the latest result for the given key.

    :return: result for key, None if the request failed
    """
    with result_lock:
        return result_store[key]


def all_done(key):
    """
    Check if requests for the given key are active.

    :param key: key for requests
    :return: True if no request is pending or active
    """
    with result_lock:
        if threads.get(key):
            return False
        return True
