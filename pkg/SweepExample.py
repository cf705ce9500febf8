from experimentManager.config import load_config, load_preset
from experimentManager.experiment import sweep

import logger

# config a logger, set use_stdout=True to output log to terminal
log = logger.setup_app_level_logger(file_name="app_debug.log",
                                    level="INFO",
                                    use_stdout=True)

speculatorScan = """
name: gcmg-speculator-scan
model: gcmg
steps: 50000
burn_in: 5000
seed: 12
params:
  n_prod: 640
  P: 64
sweep:
  param: n_spec
  values: [0, 160, 320, 640, 1280]
analysis:
  predictability_window: 20000
"""

if __name__ == '__main__':
    table = sweep(load_config(speculatorScan), output_dir="output", workers=4)
    print(table[["n_spec", "excess_kurtosis", "predictability", "mean_active_speculators"]])

    # the three-N intermittency preset with a shorter horizon
    fig2 = load_preset("fig2")
    fig2.steps = 50000
    table = sweep(fig2, output_dir="output", workers=3)
    print(table[["N", "excess_kurtosis", "acf_abs_10", "alpha_abs"]])
