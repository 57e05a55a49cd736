import cProfile
import sys

from meanking.fixtures import fixture
from meanking.search import ScanConfig, scan


def main():
    fx = fixture(sys.argv[1] if len(sys.argv) > 1 else "d4")
    scan(ScanConfig(fx.d, fx.state(), trials=1000, seed=42), fx.mubs())


if __name__ == "__main__":
    cProfile.run("main()")
