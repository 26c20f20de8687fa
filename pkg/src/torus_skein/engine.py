import asyncio
import logging
import os
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from functools import partial
from typing import Self

from torus_skein.config import AppConfig
from torus_skein.core.complex import assemble_complex
from torus_skein.core.homology import collect_homology, compare_results, detect, ensure_valid, reduce_block
from torus_skein.models.diagram import TorusDiagram
from torus_skein.models.grading import Ring
from torus_skein.models.results import ComparisonVerdict, DetectionReport, HomologyResult

logger = logging.getLogger(__name__)


class HomologyEngine:
    def __init__(self, config: AppConfig | None = None) -> None:
        self._config = config or AppConfig()
        workers = self._config.engine.threads or os.cpu_count() or 1
        self._executor: Executor | None
        if self._config.engine.executor == "process":
            self._executor = ProcessPoolExecutor(max_workers=workers)
        else:
            self._executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="torus-skein")

    @classmethod
    async def create(cls, config: AppConfig | None = None) -> Self:
        return cls(config)

    @property
    def config(self) -> AppConfig:
        return self._config

    def _pool(self) -> Executor:
        if self._executor is None:
            raise RuntimeError("Engine is closed")
        return self._executor

    async def compute(self, diagram: TorusDiagram, ring: Ring = Ring.Z2) -> HomologyResult:
        ensure_valid(diagram)
        executor = self._pool()
        loop = asyncio.get_running_loop()
        complex_ = await asyncio.to_thread(
            partial(
                assemble_complex,
                diagram,
                ring,
                max_crossings=self._config.engine.max_crossings,
                verify=self._config.engine.verify_boundaries,
            )
        )

        boundaries = complex_.nonzero_boundaries()
        # largest blocks first keeps every worker busy until the end
        keys = sorted(boundaries, key=lambda key: boundaries[key].nnz, reverse=True)
        reductions = await asyncio.gather(
            *(loop.run_in_executor(executor, reduce_block, ring, boundaries[key]) for key in keys)
        )
        logger.debug("Reduced %d boundary blocks over %s", len(boundaries), ring)
        return collect_homology(complex_, dict(zip(keys, reductions, strict=True)))

    async def detect(self, diagram: TorusDiagram) -> DetectionReport:
        return detect(await self.compute(diagram, Ring.Z2))

    async def compare(self, first: TorusDiagram, second: TorusDiagram, ring: Ring = Ring.Z2) -> ComparisonVerdict:
        results = await asyncio.gather(self.compute(first, ring), self.compute(second, ring))
        return compare_results(*results)

    async def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    async def __aenter__(self) -> Self:
        return self

    async def __aexit__(self, *args: object) -> None:
        await self.close()
