//! Subcommands: parameter schemas and runners producing tables.
//!
//! Energies share whatever unit the inputs use (`E`); flux is in flux
//! quanta, time in inverse energy units.

use rayon::prelude::*;

use entenerg::chain::{default_time_grid, energy_correlation, revival_metrics, Boundary, ChainSpec};
use entenerg::oracle::{
    discretize_ohmic, fock_ed_oscillator, oscillator_bath_covariance, perturbative_p_plus,
    spin_boson_with_truncation_check, OscillatorBath, Scheme, TRUNCATION_WARNING,
};
use entenerg::oscillator::{
    cumulants, level_populations, level_populations_auto, ohmic_xy, shape_from_state, GaussianOscState, ShapeParams,
};
use entenerg::qubit::{
    crossover_temperature, energy_distribution, energy_moments, gibbs_probabilities, weak_coupling_excitation,
    TwoLevelSpec,
};
use entenerg::ring::{
    ansatz_exponent, bethe_current, cpb_effective_spec, current_amplitude, fourier_harmonics, pilgram_ratio,
    rational_to_f64, tunnel_coupling, CpbSpec, Parity, RingSpec,
};
use entenerg::verify;

use crate::error::CliError;
use crate::params::{int, num, text, unset, Param, Params};
use crate::table::{Cell, Table};

pub struct Command {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [Param],
    pub run: fn(&Params, &mut Report) -> Result<Table, CliError>,
}

/// Human-readable summary lines written to stderr next to the table.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    /// `(failed, total)` after `verify`.
    pub verify_failures: Option<(usize, usize)>,
}

pub static COMMANDS: &[Command] = &[
    Command {
        name: "qubit-probs",
        about: "Weak-coupling ground-state occupations of a qubit over a bias sweep",
        params: &[
            num("epsilon_start", -2.0, "first bias ε [E]"),
            num("epsilon_stop", 2.0, "last bias ε [E]"),
            int("epsilon_count", 41, "number of bias points"),
            unset("epsilon", "single bias ε [E] instead of a sweep"),
            num("delta", 1.0, "tunnelling Δ [E]"),
            num("alpha", 0.05, "ohmic coupling α"),
            num("omega_c", 100.0, "bath cutoff ω_c [E]"),
        ],
        run: qubit_probs,
    },
    Command {
        name: "qubit-energy-dist",
        about: "Two-point energy distribution of a qubit from its excited-state weight",
        params: &[
            num("p_plus_start", 0.0, "first excited-state probability"),
            num("p_plus_stop", 1.0, "last excited-state probability"),
            int("p_plus_count", 11, "number of points"),
            unset("p_plus", "single probability instead of a sweep"),
            num("omega", 1.0, "level splitting Ω [E]"),
        ],
        run: qubit_energy_dist,
    },
    Command {
        name: "qubit-crossover",
        about: "Temperature at which thermal excitation matches ground-state entanglement",
        params: &[
            num("alpha_start", 0.001, "first coupling α"),
            num("alpha_stop", 0.1, "last coupling α"),
            int("alpha_count", 20, "number of couplings"),
            unset("alpha", "single coupling instead of a sweep"),
            num("epsilon", 0.0, "bias ε [E]"),
            num("delta", 1.0, "tunnelling Δ [E]"),
            num("omega_c", 100.0, "bath cutoff ω_c [E]"),
        ],
        run: qubit_crossover,
    },
    Command {
        name: "ring-current",
        about: "Tunnel coupling, current amplitude and coupled-ring current over a flux sweep",
        params: &[
            num("flux_start", -0.5, "first flux [Φ₀]"),
            num("flux_stop", 0.5, "last flux [Φ₀]"),
            int("flux_count", 201, "number of flux points"),
            unset("flux", "single flux [Φ₀] instead of a sweep"),
            num("t_left", 1.0, "left tunnel energy t_L [E]"),
            num("t_right", 1.0, "right tunnel energy t_R [E]"),
            text("parity", "minus", "sign of the interference term: plus or minus"),
            num("epsilon", 0.0, "level detuning ε [E]"),
            num("alpha", 0.0, "ohmic coupling α of the ring current"),
        ],
        run: ring_current,
    },
    Command {
        name: "ring-harmonics",
        about: "Fourier harmonics of the resonant ring current against the closed-form ratios",
        params: &[
            num("alpha_start", 0.0, "first coupling α"),
            num("alpha_stop", 0.4, "last coupling α"),
            int("alpha_count", 5, "number of couplings"),
            unset("alpha", "single coupling instead of a sweep"),
            int("n_max", 6, "highest harmonic"),
        ],
        run: ring_harmonics,
    },
    Command {
        name: "ring-exponents",
        about: "Exact ansatz exponents b_n",
        params: &[int("n_max", 4, "highest n (starting from 2)")],
        run: ring_exponents,
    },
    Command {
        name: "cpb-map",
        about: "Two-level parameters of a split Cooper pair box over an external-flux sweep",
        params: &[
            num("flux_x_start", 0.0, "first external flux [h/2e]"),
            num("flux_x_stop", 1.0, "last external flux [h/2e]"),
            int("flux_x_count", 101, "number of flux points"),
            unset("flux_x", "single flux instead of a sweep"),
            num("e_josephson", 1.0, "Josephson energy E_J [E]"),
            num("e_charging", 1.0, "charging energy E_C [E]"),
            num("n_gate", 0.4, "gate charge N_g"),
        ],
        run: cpb_map,
    },
    Command {
        name: "osc-cumulants",
        about: "Energy cumulants of an ohmically damped oscillator over a coupling sweep",
        params: &[
            num("alpha_start", 0.0, "first coupling α"),
            num("alpha_stop", 0.5, "last coupling α"),
            int("alpha_count", 11, "number of couplings"),
            unset("alpha", "single coupling instead of a sweep"),
            num("cutoff_ratio", 100.0, "ω_c/ω"),
            num("epsilon", 1.0, "level spacing ħω [E]"),
        ],
        run: osc_cumulants,
    },
    Command {
        name: "osc-levels",
        about: "Level populations ρ_nn of a Gaussian oscillator state",
        params: &[
            unset("x", "2mω⟨q²⟩ (default: from alpha and cutoff_ratio)"),
            unset("y", "2⟨p²⟩/(mω) (default: from alpha and cutoff_ratio)"),
            num("alpha", 0.1, "ohmic coupling α used when x, y are not given"),
            num("cutoff_ratio", 100.0, "ω_c/ω used when x, y are not given"),
            num("epsilon", 1.0, "level spacing ħω [E]"),
            unset("n_max", "highest level (default: until the tail bound is below 1e-12)"),
        ],
        run: osc_levels,
    },
    Command {
        name: "osc-ohmic-surface",
        about: "Purity and energy variance over a coupling by cutoff grid",
        params: &[
            num("alpha_start", 0.0, "first coupling α"),
            num("alpha_stop", 0.9, "last coupling α"),
            int("alpha_count", 10, "number of couplings"),
            unset("alpha", "single coupling instead of a sweep"),
            num("cutoff_ratio_start", 10.0, "first ω_c/ω (geometric sweep)"),
            num("cutoff_ratio_stop", 10000.0, "last ω_c/ω"),
            int("cutoff_ratio_count", 4, "number of cutoffs"),
            unset("cutoff_ratio", "single ω_c/ω instead of a sweep"),
            num("epsilon", 1.0, "level spacing ħω [E]"),
        ],
        run: osc_ohmic_surface,
    },
    Command {
        name: "chain-correlation",
        about: "Energy-energy correlation of an oscillator at the head of a harmonic chain",
        params: &[
            int("n", 50, "chain length N"),
            num("mh_over_m", 0.1, "chain-to-oscillator mass ratio m_h/m"),
            num("omega_ratio", 1.0, "ω/ω_h"),
            num("mass", 1.0, "oscillator mass m"),
            num("omega_h", 1.0, "chain spring frequency ω_h [E]"),
            text("boundary", "free", "far end of the chain: free or fixed"),
            int("points", 2048, "number of time points"),
            unset("t_max", "last time [1/E] (default 3N/ω_h)"),
        ],
        run: chain_correlation,
    },
    Command {
        name: "oracle-spinboson",
        about: "Exact diagonalization of a qubit coupled to a few bath modes against perturbation theory",
        params: &[
            num("alpha_start", 0.005, "first coupling α"),
            num("alpha_stop", 0.02, "last coupling α"),
            int("alpha_count", 4, "number of couplings"),
            unset("alpha", "single coupling instead of a sweep"),
            num("epsilon", 0.0, "bias ε [E]"),
            num("delta", 1.0, "tunnelling Δ [E]"),
            num("omega_c", 10.0, "bath cutoff ω_c [E]"),
            int("modes", 4, "number of bath modes M"),
            int("n_max", 6, "highest boson number per mode"),
            text("scheme", "log", "frequency sampling: log or linear"),
        ],
        run: oracle_spinboson,
    },
    Command {
        name: "oracle-oscillator",
        about: "Fock-space exact diagonalization of an oscillator with a short chain against the normal-mode result",
        params: &[
            int("n", 1, "chain length N (at most 2)"),
            num("mh_over_m", 0.05, "chain-to-oscillator mass ratio m_h/m"),
            num("omega_ratio", 1.0, "ω/ω_h"),
            text("boundary", "free", "far end of the chain: free or fixed"),
            int("n_max", 20, "highest Fock level per site"),
            int("points", 101, "number of time points"),
            num("t_max", 10.0, "last time [1/ω]"),
        ],
        run: oracle_oscillator,
    },
    Command {
        name: "verify",
        about: "Run the acceptance criteria; exits nonzero if any fails",
        params: &[unset("criterion", "run only this criterion (1-9)")],
        run: run_verify,
    },
];

pub fn find(name: &str) -> Option<&'static Command> {
    COMMANDS.iter().find(|c| c.name == name)
}

fn parallel_rows<T, F>(points: &[T], f: F) -> Result<Vec<Vec<Cell>>, CliError>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Vec<Cell>>, CliError> + Sync + Send,
{
    let chunks: Vec<Result<Vec<Vec<Cell>>, CliError>> = points.par_iter().map(f).collect();
    let mut rows = Vec::new();
    for chunk in chunks {
        rows.extend(chunk?);
    }
    Ok(rows)
}

fn table(header: &[&'static str], rows: Vec<Vec<Cell>>) -> Table {
    let mut t = Table::new(header);
    for r in rows {
        t.push(r);
    }
    t
}

fn qubit_probs(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let (delta, alpha, omega_c) = (p.num("delta")?, p.num("alpha")?, p.num("omega_c")?);
    let rows = parallel_rows(&p.sweep("epsilon", false)?, |&eps| {
        let spec = TwoLevelSpec::new(eps, delta, alpha, omega_c)?;
        let w = weak_coupling_excitation(&spec)?;
        Ok(vec![vec![
            eps.into(),
            spec.level_splitting()?.into(),
            w.p_plus.into(),
            (1.0 - w.p_plus).into(),
            w.beyond_validity.into(),
        ]])
    })?;
    Ok(table(
        &[
            "epsilon [E]",
            "omega [E]",
            "p_plus [1]",
            "p_minus [1]",
            "beyond_validity [0/1]",
        ],
        rows,
    ))
}

fn qubit_energy_dist(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let omega = p.num("omega")?;
    let rows = parallel_rows(&p.sweep("p_plus", false)?, |&pp| {
        let m = energy_moments(pp, omega)?;
        let d = energy_distribution(m.mean, omega)?;
        Ok(vec![vec![
            pp.into(),
            m.mean.into(),
            m.variance.into(),
            d.values[0].into(),
            d.weights[0].into(),
            d.values[1].into(),
            d.weights[1].into(),
        ]])
    })?;
    Ok(table(
        &[
            "p_plus [1]",
            "mean_energy [E]",
            "variance [E^2]",
            "energy_minus [E]",
            "weight_minus [1]",
            "energy_plus [E]",
            "weight_plus [1]",
        ],
        rows,
    ))
}

fn qubit_crossover(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let (eps, delta, omega_c) = (p.num("epsilon")?, p.num("delta")?, p.num("omega_c")?);
    let rows = parallel_rows(&p.sweep("alpha", false)?, |&alpha| {
        let spec = TwoLevelSpec::new(eps, delta, alpha, omega_c)?;
        let omega = spec.level_splitting()?;
        let t_star = crossover_temperature(&spec)?;
        let g = gibbs_probabilities(omega, t_star)?;
        Ok(vec![vec![
            alpha.into(),
            spec.log_coupling()?.into(),
            t_star.into(),
            g.p_plus.into(),
            g.low_temperature_p_plus().into(),
        ]])
    })?;
    Ok(table(
        &[
            "alpha [1]",
            "weak_coupling_p_plus [1]",
            "t_star [E]",
            "gibbs_p_plus_at_t_star [1]",
            "boltzmann_factor_at_t_star [1]",
        ],
        rows,
    ))
}

fn parity(p: &Params) -> Result<Parity, CliError> {
    Ok(match p.choice("parity", &["plus", "minus"])? {
        "plus" => Parity::Plus,
        _ => Parity::Minus,
    })
}

fn ring_current(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let ring = RingSpec::new(
        p.num("t_left")?,
        p.num("t_right")?,
        parity(p)?,
        p.num("epsilon")?,
        p.num("alpha")?,
    )?;
    let rows = parallel_rows(&p.sweep("flux", false)?, |&flux| {
        let delta = tunnel_coupling(&ring, flux);
        let omega = ring.epsilon.hypot(delta);
        let i0 = current_amplitude(&ring, flux).ok();
        let bethe = if ring.epsilon == 0.0 && ring.alpha < 1.0 {
            Some(bethe_current(&ring, flux, ring.alpha)?)
        } else {
            None
        };
        Ok(vec![vec![
            flux.into(),
            delta.into(),
            omega.into(),
            i0.into(),
            bethe.into(),
        ]])
    })?;
    Ok(table(
        &[
            "flux [Phi0]",
            "delta [E]",
            "omega [E]",
            "current_amplitude [E/Phi0]",
            "coupled_current [E/Phi0]",
        ],
        rows,
    ))
}

fn ring_harmonics(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let n_max = p.int("n_max")?;
    let rows = parallel_rows(&p.sweep("alpha", false)?, |&alpha| {
        let s = fourier_harmonics(alpha, n_max)?;
        (1..=n_max)
            .map(|n| {
                Ok(vec![
                    alpha.into(),
                    n.into(),
                    s.amplitude(n).into(),
                    s.ratio(n)?.into(),
                    pilgram_ratio(n, alpha)?.into(),
                ])
            })
            .collect()
    })?;
    Ok(table(
        &[
            "alpha [1]",
            "n [1]",
            "amplitude [E/Phi0]",
            "ratio_to_first [1]",
            "closed_form_ratio [1]",
        ],
        rows,
    ))
}

fn ring_exponents(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let mut t = Table::new(&["n [1]", "b_n [1]", "b_n_exact [1]"]);
    for n in 2..=p.int("n_max")? {
        let b = ansatz_exponent(n)?;
        t.push(vec![n.into(), rational_to_f64(&b).into(), b.to_string().into()]);
    }
    Ok(t)
}

fn cpb_map(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let (ej, ec, ng) = (p.num("e_josephson")?, p.num("e_charging")?, p.num("n_gate")?);
    let rows = parallel_rows(&p.sweep("flux_x", false)?, |&fx| {
        let eff = cpb_effective_spec(&CpbSpec::new(ej, ec, ng, fx)?);
        Ok(vec![vec![
            fx.into(),
            eff.epsilon.into(),
            eff.delta.into(),
            eff.omega.into(),
            eff.current_amplitude.into(),
        ]])
    })?;
    Ok(table(
        &[
            "flux_x [h/2e]",
            "epsilon [E]",
            "delta [E]",
            "omega [E]",
            "current_amplitude [E/(h/2e)]",
        ],
        rows,
    ))
}

fn ohmic_shape(alpha: f64, cutoff_ratio: f64, epsilon: f64) -> Result<ShapeParams, CliError> {
    let (x, y) = ohmic_xy(alpha, cutoff_ratio)?;
    Ok(ShapeParams::from_xy(x, y, epsilon)?)
}

fn osc_cumulants(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let (ratio, eps) = (p.num("cutoff_ratio")?, p.num("epsilon")?);
    let rows = parallel_rows(&p.sweep("alpha", false)?, |&alpha| {
        let s = ohmic_shape(alpha, ratio, eps)?;
        let k = cumulants(&s);
        Ok(vec![vec![
            alpha.into(),
            s.x.into(),
            s.y.into(),
            s.purity().into(),
            k.k1.into(),
            k.k2.into(),
            k.k3.into(),
            k.k4.into(),
        ]])
    })?;
    Ok(table(
        &[
            "alpha [1]",
            "x [1]",
            "y [1]",
            "purity [1]",
            "kappa1 [E]",
            "kappa2 [E^2]",
            "kappa3 [E^3]",
            "kappa4 [E^4]",
        ],
        rows,
    ))
}

fn osc_levels(p: &Params, report: &mut Report) -> Result<Table, CliError> {
    let eps = p.num("epsilon")?;
    let shape = match (p.opt_num("x")?, p.opt_num("y")?) {
        (Some(x), Some(y)) => ShapeParams::from_xy(x, y, eps)?,
        (None, None) => ohmic_shape(p.num("alpha")?, p.num("cutoff_ratio")?, eps)?,
        _ => return Err(CliError::Config("`x` and `y` must be given together".into())),
    };
    let levels = match p.opt_int("n_max")? {
        Some(n) => level_populations(&shape, n)?,
        None => level_populations_auto(&shape)?,
    };
    report.lines.push(format!(
        "x = {}, y = {}, tail bound beyond n_max = {:e}",
        shape.x, shape.y, levels.tail_bound
    ));
    let mut t = Table::new(&["n [1]", "energy [E]", "population [1]"]);
    for (n, &rho) in levels.populations.iter().enumerate() {
        t.push(vec![n.into(), (eps * (n as f64 + 0.5)).into(), rho.into()]);
    }
    Ok(t)
}

fn osc_ohmic_surface(p: &Params, _: &mut Report) -> Result<Table, CliError> {
    let eps = p.num("epsilon")?;
    let alphas = p.sweep("alpha", false)?;
    let ratios = p.sweep("cutoff_ratio", true)?;
    let grid: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| ratios.iter().map(move |&r| (a, r)))
        .collect();
    let rows = parallel_rows(&grid, |&(alpha, ratio)| {
        let s = ohmic_shape(alpha, ratio, eps)?;
        let k = cumulants(&s);
        Ok(vec![vec![
            alpha.into(),
            ratio.into(),
            s.x.into(),
            s.y.into(),
            s.purity().into(),
            k.k1.into(),
            k.k2.into(),
        ]])
    })?;
    Ok(table(
        &[
            "alpha [1]",
            "cutoff_ratio [1]",
            "x [1]",
            "y [1]",
            "purity [1]",
            "mean_energy [E]",
            "kappa2 [E^2]",
        ],
        rows,
    ))
}

fn chain_spec(p: &Params, mass: f64, omega_h: f64) -> Result<ChainSpec, CliError> {
    let boundary = match p.choice("boundary", &["free", "fixed"])? {
        "free" => Boundary::FreeEnd,
        _ => Boundary::FixedEnd,
    };
    Ok(ChainSpec::new(
        p.int("n")?,
        mass,
        p.num("omega_ratio")? * omega_h,
        p.num("mh_over_m")? * mass,
        omega_h,
        boundary,
    )?)
}

fn time_grid(t_max: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 || t_max.is_nan() || t_max <= 0.0 {
        return Err(CliError::Config("need `points` >= 2 and `t_max` > 0".into()));
    }
    Ok((0..points).map(|i| t_max * i as f64 / (points - 1) as f64).collect())
}

fn chain_correlation(p: &Params, report: &mut Report) -> Result<Table, CliError> {
    let spec = chain_spec(p, p.num("mass")?, p.num("omega_h")?)?;
    let times = match p.opt_num("t_max")? {
        Some(t_max) => time_grid(t_max, p.int("points")?)?,
        None => default_time_grid(&spec, p.int("points")?),
    };
    let trace = energy_correlation(&spec, &times)?;
    match revival_metrics(&trace, &spec) {
        Ok(m) => report.lines.push(format!(
            "C(0) = {:e}, t_revival = {} ({:.4} x 2N/omega_h), peak_ratio = {:.4}",
            trace.values[0],
            m.t_revival,
            m.t_revival * spec.omega_h / (2.0 * spec.n_sites as f64),
            m.peak_ratio
        )),
        Err(e) => report.lines.push(format!("no revival metrics: {e}")),
    }
    let mut t = Table::new(&["t [1/E]", "correlation [E^2]"]);
    for (&time, &c) in trace.times.iter().zip(&trace.values) {
        t.push(vec![time.into(), c.into()]);
    }
    Ok(t)
}

fn oracle_spinboson(p: &Params, report: &mut Report) -> Result<Table, CliError> {
    let (eps, delta, omega_c) = (p.num("epsilon")?, p.num("delta")?, p.num("omega_c")?);
    let (modes, n_max) = (p.int("modes")?, p.int("n_max")?);
    let scheme = match p.choice("scheme", &["log", "linear"])? {
        "log" => Scheme::Log,
        _ => Scheme::Linear,
    };
    let alphas = p.sweep("alpha", false)?;
    let rows = parallel_rows(&alphas, |&alpha| {
        let spec = TwoLevelSpec::new(eps, delta, alpha, omega_c)?;
        let bath = discretize_ohmic(alpha, omega_c, modes, scheme)?;
        let ed = spin_boson_with_truncation_check(&spec, &bath, n_max)?;
        Ok(vec![vec![
            alpha.into(),
            ed.result.p_plus.into(),
            perturbative_p_plus(&spec, &bath)?.into(),
            ed.result.mean_system_energy.into(),
            ed.result.state.ground_energy.into(),
            ed.p_plus_shift.into(),
            ed.result.state.dim.into(),
        ]])
    })?;
    for row in &rows {
        if let (Cell::Num(alpha), Cell::Num(shift)) = (&row[0], &row[5]) {
            if *shift > TRUNCATION_WARNING {
                report.lines.push(format!(
                    "alpha = {alpha}: p_plus changes by {shift:.2e} (relative) at n_max + 1; raise n_max"
                ));
            }
        }
    }
    Ok(table(
        &[
            "alpha [1]",
            "p_plus_ed [1]",
            "p_plus_perturbative [1]",
            "mean_system_energy [E]",
            "ground_energy [E]",
            "truncation_shift [1]",
            "dimension [1]",
        ],
        rows,
    ))
}

fn oracle_oscillator(p: &Params, report: &mut Report) -> Result<Table, CliError> {
    let spec = chain_spec(p, 1.0, 1.0)?;
    let times = time_grid(p.num("t_max")? / spec.omega, p.int("points")?)?;
    let system = OscillatorBath::chain(&spec)?;
    let ed = fock_ed_oscillator(&system, p.int("n_max")?, &times)?;
    let exact = energy_correlation(&spec, &times)?;
    let (q2, p2) = oscillator_bath_covariance(&system)?;
    let shape = shape_from_state(&GaussianOscState::new(q2, p2, spec.mass, spec.omega)?)?;
    report.lines.push(format!(
        "rho_11: ED {:e}, closed form {:e}; <q^2>: ED {:e}, Gaussian {:e}; edge population {:e}",
        ed.populations.get(1).copied().unwrap_or(f64::NAN),
        (4.0 / shape.d).sqrt() * shape.b,
        ed.moments.0,
        q2,
        ed.edge_population
    ));
    let mut t = Table::new(&["t [1/E]", "correlation_ed [E^2]", "correlation_modes [E^2]"]);
    for ((&time, &a), &b) in times.iter().zip(&ed.correlation.values).zip(&exact.values) {
        t.push(vec![time.into(), a.into(), b.into()]);
    }
    Ok(t)
}

fn run_verify(p: &Params, report: &mut Report) -> Result<Table, CliError> {
    let reports = match p.opt_int("criterion")? {
        Some(id) => vec![u8::try_from(id)
            .ok()
            .and_then(verify::run)
            .ok_or_else(|| CliError::Config(format!("criterion must be 1-{}", verify::CRITERIA)))?],
        None => verify::run_all(),
    };
    let mut t = Table::new(&["criterion [1]", "passed [0/1]", "seconds [s]", "title"]);
    for r in &reports {
        report.lines.push(r.to_string().trim_end().to_string());
        t.push(vec![
            (r.id as usize).into(),
            r.passed().into(),
            r.elapsed.as_secs_f64().into(),
            r.title.to_string().into(),
        ]);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    report.lines.push(format!(
        "{} of {} criteria passed",
        reports.len() - failed,
        reports.len()
    ));
    report.verify_failures = Some((failed, reports.len()));
    Ok(t)
}
