"""BER union bound against full-chain simulated BER.

The bound sums bit-error-weighted pairwise error probabilities over every
(transmitted, detected) hypothesis pair, uniformly averaged over interferer
symbols and SIC-layer decisions. For user 1 with BPSK the bound coincides
with the true BER; for the SIC users it stays above the simulation and
eventually floors, because the uniform averaging keeps destructive SIC
error patterns (whose pairwise probability tends to 1) at fixed weight.
"""

from noma_ggn import GGNoiseModel, SystemConfig, simulate_ber, union_bound

TRIALS = 200_000


def main():
    for alpha in (1.0, 2.0):
        model = GGNoiseModel.normalized(alpha)
        print(f"\nalpha = {alpha}")
        print(f"{'snr_db':>7} " + " ".join(f"{f'user {l}':>23}" for l in (1, 2, 3)))
        for snr_db in range(10, 45, 10):
            gamma_bar = 10.0 ** (snr_db / 10.0)
            cfg = SystemConfig(a=(0.7, 0.2, 0.1), gamma_bar=gamma_bar, noise_alpha=alpha)
            sims = simulate_ber(cfg, model, trials=TRIALS, seed=1)
            cells = []
            for l, est in zip((1, 2, 3), sims):
                bound = union_bound(cfg, model, l).p_ub
                cells.append(f"{bound:10.4e}/{est.point:10.4e}")
            print(f"{snr_db:>7} " + " ".join(f"{c:>23}" for c in cells))
    print("\ncolumns: union bound / simulated BER (the bound never sits below)")


if __name__ == "__main__":
    main()
