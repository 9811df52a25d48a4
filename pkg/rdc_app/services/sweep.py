import logging
import queue
import threading
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from rdc_kernels.errors import DomainError, InfeasibleProblemError

Evaluate = Callable[[float], float]


class SweepWorker(threading.Thread):
    def __init__(
        self,
        sample_queue: queue.Queue,
        results: Dict[int, Optional[float]],
        errors: Dict[int, BaseException],
        evaluate: Evaluate,
        logger: logging.Logger,
    ):
        threading.Thread.__init__(self)
        self.queue = sample_queue
        self.results = results
        self.errors = errors
        self.evaluate = evaluate
        self.logger = logger

    def run(self):
        self.logger.debug(f"Starting {self.name}")
        while True:
            try:
                index, x = self.queue.get_nowait()
            except queue.Empty:
                break
            try:
                value = self.evaluate(x)
            except InfeasibleProblemError as error:
                self.logger.debug(f"Sample {index} at x={x!r} is infeasible: {error}")
                value = None
            except Exception as error:
                error.add_note(f"while evaluating sample {index} at x={x!r}")
                self.errors[index] = error
                value = None
            self.results[index] = value
            self.queue.task_done()


def run_sweep(
    xs: Sequence[float], evaluate: Evaluate, workers: int, logger: logging.Logger
) -> Tuple[List[Tuple[float, float]], int]:
    """Evaluates every abscissa on worker threads; returns the feasible samples in order and the infeasible count"""
    if workers < 1:
        raise DomainError(f"workers must be at least 1, got {workers}")

    sample_queue = queue.Queue()
    for index, x in enumerate(xs):
        sample_queue.put((index, x))

    results: Dict[int, Optional[float]] = {}
    errors: Dict[int, BaseException] = {}
    count = max(min(workers, len(xs)), 1)
    threads = [SweepWorker(sample_queue, results, errors, evaluate, logger) for _ in range(count)]
    for thread in threads:
        thread.daemon = True
        thread.start()
    for thread in threads:
        thread.join()

    if errors:
        raise errors[min(errors)]

    samples = [(x, results[index]) for index, x in enumerate(xs) if results[index] is not None]
    infeasible = len(xs) - len(samples)
    if infeasible:
        logger.info(f"{infeasible} of {len(xs)} samples were infeasible and left out")
    return samples, infeasible
