# A fixed pool of worker threads draining a shared task queue
import logging
from queue import Empty, Queue
from threading import Lock, Thread, current_thread

from qcausal.configuration import Configuration

logger = logging.getLogger(__name__)


class TaskThread(Thread):
    """
    Pulls (index, task) pairs until the queue is empty; every outcome,
    a return value or the raised exception, is stored under its index
    """

    def __init__(self, tasks, results, results_lock):
        Thread.__init__(self, daemon=True)
        self.tasks = tasks
        self.results = results
        self.results_lock = results_lock

    def run(self):
        t = current_thread()
        while True:
            try:
                index, task = self.tasks.get_nowait()
            except Empty:
                logger.debug("thread %d gets nothing, now exits", t.ident)
                break
            logger.debug("thread %d gets task %d", t.ident, index)
            try:
                outcome = task()
            except Exception as e:
                outcome = e
            with self.results_lock:
                self.results[index] = outcome
            self.tasks.task_done()


def run_tasks(tasks, jobs=None):
    """
    Run the callables in `tasks` on min(jobs, len(tasks)) threads.
    Returns their outcomes in task order; a task that raised leaves its exception
    """
    tasks = list(tasks)
    jobs = Configuration.get_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or len(tasks) <= 1:
        outcomes = []
        for task in tasks:
            try:
                outcomes.append(task())
            except Exception as e:
                outcomes.append(e)
        return outcomes

    queue = Queue()
    for index, task in enumerate(tasks):
        queue.put((index, task))
    results = {}
    results_lock = Lock()
    threads = [TaskThread(queue, results, results_lock) for _ in range(min(jobs, len(tasks)))]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert len(results) == len(tasks), "Some tasks did not finish"
    return [results[index] for index in range(len(tasks))]
