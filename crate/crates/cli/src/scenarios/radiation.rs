use std::f64::consts::PI;

use num_complex::Complex64;
use qmbench::radiation::{
    angular_map, cartesian_components, hydrogen_dipole_me, hydrogen_radial_integral, selection_rules, EmissionSpec, Multipole,
    Parity, SelectionRule, HYDROGEN_MAX_N,
};
use qmbench::specfun::{clebsch_gordan_doubled, AngularMomentum};

use super::Scenario;
use crate::error::CliError;
use crate::params::{ParamSpec, Params};
use crate::report::{Report, Table};

const MULTIPOLES: &[&str] = &["E1", "E2", "M1"];

fn multipole(p: &Params) -> Multipole {
    match p.choice("multipole") {
        "E2" => Multipole::E2,
        "M1" => Multipole::M1,
        _ => Multipole::E1,
    }
}

pub const RADIATION_PATTERN: Scenario = Scenario {
    name: "radiation-pattern",
    description: "Angular emission rate per polarization for a single spherical component of the source",
    anchors: &[
        "dΓ/dΩ ∝ ω³|λ*·d|² (E1)",
        "dΓ/dΩ ∝ ω⁵|k̂·Q·λ*|² (E2)",
        "dΓ/dΩ ∝ ω³|(k̂ × λ*)·m|² (M1)",
    ],
    params: &[
        ParamSpec::choice("multipole", MULTIPOLES, "E1", "multipole class"),
        ParamSpec::int("mu", "0", "spherical component carrying unit strength"),
        ParamSpec::float("omega", "1", "photon frequency"),
        ParamSpec::int("n-theta", "36", "polar cells"),
        ParamSpec::int("n-phi", "1", "azimuthal cells"),
    ],
    run: radiation_pattern,
};

fn radiation_pattern(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let mp = multipole(p);
    let rank = mp.rank() as i64;
    let mu = p.int("mu");
    if mu.abs() > rank {
        return Err(CliError::Schema(format!("--mu {mu} outside -{rank}..={rank} for {mp}")));
    }
    let omega = p.positive("omega")?;
    let zero = Complex64::new(0.0, 0.0);
    let spec = match mp {
        Multipole::E2 => {
            let mut q2 = [zero; 5];
            q2[(mu + 2) as usize] = Complex64::new(1.0, 0.0);
            EmissionSpec::electric_quadrupole_spherical(omega, q2)?
        }
        _ => {
            let mut s = [zero; 3];
            s[(mu + 1) as usize] = Complex64::new(1.0, 0.0);
            let v = cartesian_components(s);
            if mp == Multipole::M1 {
                EmissionSpec::magnetic_dipole(omega, v)?
            } else {
                EmissionSpec::electric_dipole(omega, v)?
            }
        }
    };
    let (nt, np) = (p.count("n-theta", 1, 100_000)?, p.count("n-phi", 1, 100_000)?);
    let cell = (PI / nt as f64) * (2.0 * PI / np as f64);
    let mut t = Table::new("pattern", &["theta", "phi", "rate1", "rate2", "total"]);
    let mut integral = 0.0;
    for s in angular_map(&spec, nt, np)? {
        let total = s.rate1 + s.rate2;
        integral += total * s.theta.sin() * cell;
        t.push(vec![s.theta, s.phi, s.rate1, s.rate2, total]);
    }
    r.summary("integrated_rate", integral);
    r.table(t);
    Ok(())
}

pub const SELECTION_RULES: Scenario = Scenario {
    name: "selection-rules",
    description: "Selection-rule verdicts and Wigner–Eckart matrix elements from one orbital state",
    anchors: &["⟨l'm'|T_Lμ|lm⟩ = ⟨lm, Lμ|l'm'⟩⟨l'||T_L||l⟩", "parity (-1)^l, flipped by E1 only"],
    params: &[
        ParamSpec::choice("multipole", MULTIPOLES, "E1", "multipole class"),
        ParamSpec::int("l", "1", "initial orbital angular momentum"),
        ParamSpec::int("m", "0", "initial projection"),
        ParamSpec::int("l-max", "4", "largest final l'"),
    ],
    run: selection_table,
};

fn rule_code(rule: Option<SelectionRule>) -> f64 {
    match rule {
        None => 0.0,
        Some(SelectionRule::AngularMomentum) => 1.0,
        Some(SelectionRule::Projection) => 2.0,
        Some(SelectionRule::ClebschGordan) => 3.0,
        Some(SelectionRule::Parity) => 4.0,
    }
}

/// Matrix element of a unit-reduced tensor of the multipole's rank and
/// parity between orbital states, built without consulting the rules.
pub fn constructed_element(mp: Multipole, l: u32, m: i32, lf: u32, mf: i32) -> f64 {
    let flips = Parity::of_orbital(l) != Parity::of_orbital(lf);
    if flips != mp.flips_parity() {
        return 0.0;
    }
    let rank = mp.rank() as i64;
    let mu = (mf - m) as i64;
    if mu.abs() > rank {
        return 0.0;
    }
    clebsch_gordan_doubled(2 * l as i64, 2 * m as i64, 2 * rank, 2 * mu, 2 * lf as i64, 2 * mf as i64)
}

fn selection_table(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let mp = multipole(p);
    let l = p.count("l", 0, 200)? as u32;
    let m = p.int("m") as i32;
    let initial = AngularMomentum::integer(l, m)?;
    let mut t = Table::new("transitions", &["l_final:int", "m_final:int", "allowed:int", "rule:int", "element"]);
    let mut inconsistent = 0usize;
    for lf in 0..=p.count("l-max", 0, 200)? as u32 {
        for mf in -(lf as i32)..=lf as i32 {
            let final_ = AngularMomentum::integer(lf, mf)?;
            let v = selection_rules(mp, initial, Parity::of_orbital(l), final_, Parity::of_orbital(lf));
            let element = constructed_element(mp, l, m, lf, mf);
            if v.allowed == (element == 0.0) {
                inconsistent += 1;
            }
            t.push(vec![lf as f64, mf as f64, v.allowed as u8 as f64, rule_code(v.violated), element]);
        }
    }
    r.note("rule_codes", "0 allowed, 1 triangle, 2 projection, 3 vanishing Clebsch-Gordan, 4 parity");
    r.check("verdict_element_mismatches", inconsistent as f64, 0.0);
    r.table(t);
    Ok(())
}

pub const HYDROGEN_DIPOLE: Scenario = Scenario {
    name: "hydrogen-dipole",
    description: "Hydrogen radial dipole integrals and z matrix elements between bound states",
    anchors: &["⟨n'l'|r|nl⟩ = ∫ r³ R_n'l' R_nl dr", "⟨n'l'm'|r_μ|nlm⟩ = ⟨lm, 1μ|l'm'⟩⟨n'l'||r||nl⟩"],
    params: &[ParamSpec::int("n-max", "3", "largest principal quantum number")],
    run: hydrogen_dipole,
};

fn hydrogen_dipole(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let n_max = p.count("n-max", 1, HYDROGEN_MAX_N as i64)? as u32;
    let mut t = Table::new("dipole", &["n:int", "l:int", "n_final:int", "l_final:int", "radial", "z_element"]);
    for n in 1..=n_max {
        for l in 0..n {
            for nf in 1..=n_max {
                for lf in 0..nf {
                    if lf + 1 != l && l + 1 != lf {
                        continue;
                    }
                    let radial = hydrogen_radial_integral(n, l, nf, lf)?;
                    let z = hydrogen_dipole_me((n, l, 0), (nf, lf, 0))?[2].re;
                    t.push(vec![n as f64, l as f64, nf as f64, lf as f64, radial, z]);
                }
            }
        }
    }
    r.table(t);
    Ok(())
}

pub const CG_ORTHOGONALITY: Scenario = Scenario {
    name: "cg-orthogonality",
    description: "Orthogonality of Clebsch–Gordan coefficients in both index pairs",
    anchors: &["Σ_{m1m2} ⟨j1m1j2m2|JM⟩⟨j1m1j2m2|J'M⟩ = δ_JJ'", "Σ_J ⟨j1m1j2m2|JM⟩⟨j1m1'j2m2'|JM⟩ = δ_m1m1'"],
    params: &[ParamSpec::int("twice-j-max", "12", "largest 2j1 and 2j2")],
    run: cg_orthogonality,
};

/// Largest deviation from orthonormality of the coupling matrix of `(j1, j2)`.
pub fn cg_orthogonality_defect(tj1: i64, tj2: i64) -> f64 {
    let mut worst = 0.0f64;
    let mut tm = -(tj1 + tj2);
    while tm <= tj1 + tj2 {
        let m1s: Vec<i64> = (0..=tj1).map(|k| -tj1 + 2 * k).filter(|m1| (tm - m1).abs() <= tj2).collect();
        let js: Vec<i64> = (0..)
            .map(|k| (tj1 - tj2).abs() + 2 * k)
            .take_while(|tj| *tj <= tj1 + tj2)
            .filter(|tj| tm.abs() <= *tj)
            .collect();
        let c: Vec<Vec<f64>> =
            m1s.iter().map(|&m1| js.iter().map(|&tj| clebsch_gordan_doubled(tj1, m1, tj2, tm - m1, tj, tm)).collect()).collect();
        for a in 0..js.len() {
            for b in 0..js.len() {
                let s: f64 = c.iter().map(|row| row[a] * row[b]).sum();
                worst = worst.max((s - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
        for a in 0..m1s.len() {
            for b in 0..m1s.len() {
                let s: f64 = (0..js.len()).map(|k| c[a][k] * c[b][k]).sum();
                worst = worst.max((s - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
        tm += 2;
    }
    worst
}

fn cg_orthogonality(p: &Params, r: &mut Report) -> Result<(), CliError> {
    let max = p.count("twice-j-max", 0, 40)? as i64;
    let mut t = Table::new("orthogonality", &["twice_j1:int", "twice_j2:int", "defect"]);
    let mut worst = 0.0f64;
    for tj1 in 0..=max {
        for tj2 in 0..=max {
            let d = cg_orthogonality_defect(tj1, tj2);
            worst = worst.max(d);
            t.push(vec![tj1 as f64, tj2 as f64, d]);
        }
    }
    r.check("orthogonality_defect", worst, 1e-10);
    r.table(t);
    Ok(())
}
