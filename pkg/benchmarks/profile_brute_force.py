import cProfile

from meanking.game import DensityOperator, brute_force_decision
from meanking.linalg import haar_random_basis, haar_random_ket
from meanking.mub import mub_family


def main():
    rho = DensityOperator.pure(haar_random_ket(3, 1))
    brute_force_decision(rho, haar_random_basis(3, 2), mub_family(3))


if __name__ == "__main__":
    cProfile.run("main()")
