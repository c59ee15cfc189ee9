# -*- coding: utf-8 -*-

DESCRIPTION = (
    "Heavy-hex kicked-Ising circuits and their reverse-annealing equivalents: "
    "parameter derivation, schedules, Pegasus tiling, exact simulation, mock sampling and analysis."
)

# ---------- Команды ----------
HELP_DERIVE = "Solve the ratio and time conditions for one (theta_h, N, J) and report feasibility."
HELP_SCHEDULE = "Build a programmable reverse or h-gain schedule (or a simulator-only pause) from derived parameters."
HELP_SWEEP = "Plan a sweep of linearly spaced theta_h angles, or a fixed-anneal-time s sweep."
HELP_EMBED = "Tile a heavy-hex lattice onto a Pegasus graph (template translates or randomized search)."
HELP_SIMULATE = "Exact Trotter-circuit or annealing evolution; magnetization curves and quench characterization."
HELP_SAMPLE = "Sample a schedule on the mock annealer, one problem copy per tile."
HELP_ANALYZE = "Magnetization curves, correlations and reference comparison from sample files."

# ---------- Флаги ----------
HELP_OUT = "Output directory (created if missing)."
HELP_CALIBRATION = "'synthetic', a bundled calibration name or a CSV path with header s,A_GHz,B_GHz."
HELP_DEVICE = "Bundled device profile name or a JSON path."
HELP_THETA = "Transverse angle theta_h in (0, pi/2]; values within 1e-4 of pi/2 snap to pi/2."
HELP_THETA_FALLBACK = "Angle for sample files whose metadata carries no theta_h."
HELP_THETAS = "Comma-separated theta_h values."
HELP_STEPS = "Number of Trotter steps N."
HELP_J = "Annealer coupler J (negative, ferromagnetic)."
HELP_H = "Linear bias on every spin (default 1 for h-gain schedules, otherwise 0)."
HELP_S_SELECTION = "How s* is picked: nearest calibration grid point or exact root on the interpolated table."
HELP_REQUIRE_FEASIBLE = "Exit with code 3 when the derived parameters cannot be programmed."
HELP_DERIVED = "derived.json written by the derive command."
HELP_METHOD = "reverse | hgain, or pause for a simulator-only constant-s schedule."
HELP_RAMP_DOWN = "h-gain release time at the end of the forward ramp, in ns."
HELP_ANGLES = "Number of linearly spaced angles in (0, pi/2]."
HELP_FIXED_TIME = "Total anneal time in microseconds; sweeps s instead of theta_h."
HELP_S_STEP = "s grid step for fixed-time sweeps."
HELP_LATTICE = "eagle127 | falcon27 | hexgrid(m,n) | <kind>:<n> BFS fragment | lattice JSON path."
HELP_DEFECTS = "Defect list JSON {\"nodes\": [...], \"edges\": [[u, v], ...]}."
HELP_TILES = "Number of disjoint tiles to search for (search mode)."
HELP_SCHEDULE_FILE = "schedule.json written by the schedule command."
HELP_QUENCH = "Comma-separated N values: compare pause-only and ramped schedules at one --thetas angle."
HELP_WITH_RAMPS = "Anneal mode: include the max-slope ramps of the reverse schedule."
HELP_OBSERVABLE = "mean (lattice average) or site:<node>."
HELP_THREADS = "Worker threads (default: available cores)."
HELP_TILING = "tiling.json written by the embed command; without it the lattice is sampled as one tile."
HELP_REQUEST = "Sampler request JSON; the response JSON goes to --out (a .json path or a directory)."
HELP_GAUGES = "Number of random spin-reversal gauges (0 disables)."
HELP_SEQUENTIAL = "Reverse schedules: start every read from the previous read's result."
HELP_VALIDATE_DEVICE = "Check the schedule against the device profile before sampling."
HELP_SAMPLES = "Sample CSV files (one per angle)."
HELP_ANCHOR = "Anchor node for distance-binned correlations (needs --lattice)."
HELP_CORRELATIONS = "Write the full <Z_i Z_j> matrix per sample file."
HELP_REFERENCE = "Reference curve CSV (theta,value) for the RMSE comparison."

# ---------- Сообщения ----------
MSG_OUTPUTS = "%s: %s file(s) written to %s"
MSG_INFEASIBLE = "theta_h={theta:.6g} N={steps} J={j:g} cannot be programmed: {issues}"
MSG_NEED_DERIVATION = "either --derived or all of --theta/--steps must be given"
MSG_NEED_ANGLES = "give --thetas or --angles"
MSG_NEED_STEPS = "--steps is required for this mode"
MSG_QUENCH_ONE_ANGLE = "--quench-steps needs exactly one angle in --thetas"
MSG_NO_THETA = "{path}: no theta_h in metadata; pass --theta"
MSG_ANCHOR_NEEDS_LATTICE = "--anchor needs --lattice"
MSG_SCHEDULE_FILE = "{path}: not a schedule document"
MSG_NEED_SCHEDULE = "give --schedule (with --lattice) or --request"
MSG_REQUEST_EXCLUSIVE = "--request carries its own problem and schedule; drop --schedule/--tiling"
