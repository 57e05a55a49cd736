import sys
import time

from meanking.fixtures import fixture
from meanking.search import ScanConfig, scan


if __name__ == "__main__":
    workers = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    fx = fixture("d3")
    for n in (1, workers):
        start = time.perf_counter()
        scan(ScanConfig(fx.d, fx.state(), trials=5000, seed=7, workers=n),
             fx.mubs())
        print(f"{n} worker(s): {time.perf_counter() - start:.2f}s")
