//! Scenario files: a JSON schema describing a Lie algebra, its action on a
//! chart or level set, the structure form, optional Cartan/moment data, and
//! the list of checks to run. Rationals are written as strings "p/q".

use crate::expr::{parse_expression, Parsed};
use crate::report::{CheckResult, Report, Status};
use plectic::action::{fundamental_fields_linear_on, ActionData};
use plectic::chart::Chart;
use plectic::cochain::CECochain;
use plectic::equivariant::CartanCochain;
use plectic::form::PolyForm;
use plectic::levelset::LevelSetChart;
use plectic::lie::{LinearAction, StructLieAlgebra};
use plectic::moment::MomentMap;
use plectic::multivec::PolyMultiVec;
use plectic::poly::Poly;
use plectic::rational::{parse_rat, Rat};
use plectic::space::Space;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold: Option<ManifoldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cartan: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moment: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<CentralExtSpec>,
    #[serde(default, skip_serializing_if = "Expectations::is_empty")]
    pub expect: Expectations,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Builtin(String),
    Table {
        dim: usize,
        #[serde(default)]
        names: Option<Vec<String>>,
        /// Entries [i, j, coefficients of [e_i, e_j]] with 1-based i < j.
        brackets: Vec<(usize, usize, Vec<String>)>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ActionSpec {
    Linear { matrices: Vec<Vec<Vec<String>>> },
    Fields { fields: Vec<String> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ManifoldSpec {
    Chart {
        coords: Vec<String>,
    },
    Levelset {
        coords: Vec<String>,
        constraint: String,
        #[serde(default = "default_points")]
        points: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        sample_points: Vec<Vec<String>>,
    },
}

fn default_points() -> usize {
    20
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    /// 1-based basis indices; symmetric slots for `cartan`, strictly
    /// increasing for `moment`.
    pub args: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralExtSpec {
    pub n: usize,
    pub cocycle: Vec<TableEntry>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Expectations {
    /// "trivial" | "nontrivial"
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    /// whether the Cartan data is expected to be a cocycle (default true)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_cocycle: Option<bool>,
    /// whether the central-extension cocycle is expected to be a coboundary
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle_trivial: Option<bool>,
}

impl Expectations {
    fn is_empty(&self) -> bool {
        self.obstruction.is_none()
            && self.extension_cocycle.is_none()
            && self.cocycle_trivial.is_none()
    }
}

/// A scenario resolved into exact objects, ready to run.
pub struct Scenario {
    pub name: String,
    pub algebra: Option<StructLieAlgebra>,
    pub action: Option<ActionData>,
    pub space: Option<Space>,
    pub omega: Option<PolyForm>,
    pub cartan: Option<CartanCochain>,
    pub moment: Option<MomentMap>,
    pub extension: Option<(usize, CECochain<Rat>)>,
    pub expect: Expectations,
    pub checks: Vec<String>,
    /// Extra named checks installed by builtin scenarios.
    pub special: BTreeMap<String, SpecialCheck>,
}

pub type SpecialCheck = std::sync::Arc<dyn Fn(&Scenario) -> Result<(), String> + Send + Sync>;

fn parse_rat_str(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("bad rational literal {s:?}"))
}

// 1-based scenario indices into 0-based basis positions, bound-checked
fn basis_indices(raw: &[usize], dim: usize) -> Result<Vec<usize>, String> {
    raw.iter()
        .map(|&i| match i.checked_sub(1) {
            Some(v) if v < dim => Ok(v),
            _ => Err(format!("basis index {i} outside 1..={dim}")),
        })
        .collect()
}

fn named_algebra(name: &str) -> Result<(StructLieAlgebra, Option<LinearAction>), String> {
    match name {
        "su2" => Ok((StructLieAlgebra::su2(), None)),
        "heisenberg3" => Ok((StructLieAlgebra::heisenberg3(), None)),
        "solvable4" => Ok((StructLieAlgebra::solvable4(), None)),
        "abelian1" | "abelian2" | "abelian3" | "abelian4" => {
            let d: usize = name[7..].parse().unwrap();
            Ok((StructLieAlgebra::abelian(d), None))
        }
        "so2" | "so3" | "so4" | "so5" => {
            let n: usize = name[2..].parse().unwrap();
            let (g, act) = StructLieAlgebra::so_n(n);
            Ok((g, Some(act)))
        }
        other => Err(format!("unknown builtin algebra {other:?}")),
    }
}

pub fn resolve(file: &ScenarioFile) -> Result<Scenario, String> {
    let (algebra, builtin_action) = match &file.algebra {
        None => (None, None),
        Some(AlgebraSpec::Builtin(name)) => {
            let (g, a) = named_algebra(name)?;
            (Some(g), a)
        }
        Some(AlgebraSpec::Table {
            dim,
            names,
            brackets,
        }) => {
            let names = names
                .clone()
                .unwrap_or_else(|| (1..=*dim).map(|i| format!("e{i}")).collect());
            let mut entries = Vec::new();
            for (i, j, coeffs) in brackets {
                if *i < 1 || *j < 1 || i >= j {
                    return Err(format!(
                        "bracket indices must satisfy 1 ≤ i < j, got ({i},{j})"
                    ));
                }
                let v: Result<Vec<Rat>, String> = coeffs.iter().map(|s| parse_rat_str(s)).collect();
                entries.push(((i - 1, j - 1), v?));
            }
            (Some(StructLieAlgebra::new(names, entries)?), None)
        }
    };

    let space = match &file.manifold {
        None => None,
        Some(ManifoldSpec::Chart { coords }) => Some(Space::Chart(Chart::new(coords.clone())?)),
        Some(ManifoldSpec::Levelset {
            coords,
            constraint,
            points,
            sample_points,
        }) => {
            let chart = Chart::new(coords.clone())?;
            let c = match parse_expression(constraint, &chart).map_err(|e| e.to_string())? {
                Parsed::Poly(p) => p,
                _ => return Err("the constraint must be a polynomial".into()),
            };
            let pts: Vec<Vec<Rat>> = if !sample_points.is_empty() {
                sample_points
                    .iter()
                    .map(|p| p.iter().map(|s| parse_rat_str(s)).collect())
                    .collect::<Result<_, _>>()?
            } else {
                // automatic sampling is available for the unit sphere
                let mut sphere = Poly::constant(&chart, plectic::rational::int(-1));
                for i in 0..chart.dim() {
                    let x = Poly::var(&chart, i);
                    sphere = &sphere + &(&x * &x);
                }
                if c != sphere {
                    return Err(
                        "automatic sampling needs the unit-sphere constraint; provide sample_points"
                            .into(),
                    );
                }
                plectic::levelset::sphere_points(chart.dim(), *points)
            };
            Some(Space::LevelSet(LevelSetChart::new(chart, c, pts)?))
        }
    };

    let action = match (&file.action, &algebra, &space) {
        (None, _, _) => match (&builtin_action, &space) {
            (Some(lin), Some(sp)) => Some(fundamental_fields_linear_on(lin, sp.chart())?),
            _ => None,
        },
        (Some(spec), Some(g), Some(sp)) => {
            let chart = sp.chart();
            match spec {
                ActionSpec::Linear { matrices } => {
                    let mats: Result<Vec<Vec<Vec<Rat>>>, String> = matrices
                        .iter()
                        .map(|m| {
                            m.iter()
                                .map(|row| row.iter().map(|s| parse_rat_str(s)).collect())
                                .collect()
                        })
                        .collect();
                    let lin = LinearAction::new(g.clone(), mats?)?;
                    Some(fundamental_fields_linear_on(&lin, chart)?)
                }
                ActionSpec::Fields { fields } => {
                    let mut vs = Vec::new();
                    for src in fields {
                        match parse_expression(src, chart).map_err(|e| e.to_string())? {
                            Parsed::MultiVec(v) if v.degree() == 1 => vs.push(v),
                            Parsed::Poly(p) if p.is_zero() => vs.push(PolyMultiVec::zero(chart, 1)),
                            _ => return Err(format!("not a vector field: {src:?}")),
                        }
                    }
                    Some(ActionData::new(g.clone(), chart.clone(), vs)?)
                }
            }
        }
        (Some(_), _, _) => return Err("an action needs both an algebra and a manifold".into()),
    };

    let omega = match (&file.omega, &space) {
        (Some(src), Some(sp)) => {
            match parse_expression(src, sp.chart()).map_err(|e| e.to_string())? {
                Parsed::Form(f) => Some(f),
                _ => return Err("ω must be a differential form".into()),
            }
        }
        (Some(_), None) => return Err("ω needs a manifold".into()),
        _ => None,
    };

    let cartan = if file.cartan.is_empty() {
        None
    } else {
        let action = action
            .as_ref()
            .ok_or("Cartan data needs an action")?
            .clone();
        let om = omega.clone().ok_or("Cartan data needs ω")?;
        let mut c = CartanCochain::new(&action, om.degree());
        c.set_entry(vec![], om);
        let total = c.total_degree();
        for e in &file.cartan {
            let chart = action.chart();
            let form = match parse_expression(&e.value, chart).map_err(|x| x.to_string())? {
                Parsed::Form(f) => f,
                Parsed::Poly(p) => PolyForm::from_poly(p),
                _ => return Err("Cartan entries must be forms".into()),
            };
            let mut args = basis_indices(&e.args, action.algebra().dim())?;
            args.sort_unstable();
            let want = total
                .checked_sub(2 * args.len())
                .ok_or_else(|| format!("too many symmetric slots in {:?}", e.args))?;
            if form.degree() != want {
                return Err(format!(
                    "Cartan entry at {:?} must be a {want}-form, found degree {}",
                    e.args,
                    form.degree()
                ));
            }
            c.set_entry(args, form);
        }
        Some(c)
    };

    let moment = if file.moment.is_empty() {
        None
    } else {
        let action = action
            .as_ref()
            .ok_or("moment data needs an action")?
            .clone();
        let om = omega.clone().ok_or("moment data needs ω")?;
        let sp = space.clone().ok_or("moment data needs a manifold")?;
        let n = om.degree() - 1;
        let mut tables: BTreeMap<usize, CECochain<PolyForm>> = BTreeMap::new();
        for e in &file.moment {
            let k = e.args.len();
            if k < 1 || k > n {
                return Err(format!("moment component arity {k} outside 1..={n}"));
            }
            let chart = action.chart();
            let form = match parse_expression(&e.value, chart).map_err(|x| x.to_string())? {
                Parsed::Form(f) => f,
                Parsed::Poly(p) => PolyForm::from_poly(p),
                _ => return Err("moment entries must be forms".into()),
            };
            let args = basis_indices(&e.args, action.algebra().dim())?;
            if !args.windows(2).all(|w| w[0] < w[1]) {
                return Err("moment component indices must be strictly increasing".into());
            }
            if form.degree() != n - k {
                return Err(format!(
                    "moment entry at {:?} must be a {}-form, found degree {}",
                    e.args,
                    n - k,
                    form.degree()
                ));
            }
            tables
                .entry(k)
                .or_insert_with(|| CECochain::zero(action.algebra(), k))
                .add_component(args, form);
        }
        Some(MomentMap::new(&action, &sp, om, tables))
    };

    let extension = match &file.extension {
        None => None,
        Some(spec) => {
            let g = algebra
                .as_ref()
                .ok_or("a central extension needs an algebra")?;
            if spec.n < 1 {
                return Err("a central extension needs n ≥ 1".into());
            }
            let mut c: CECochain<Rat> = CECochain::zero(g, spec.n + 1);
            for e in &spec.cocycle {
                let args = basis_indices(&e.args, g.dim())?;
                if args.len() != spec.n + 1 || !args.windows(2).all(|w| w[0] < w[1]) {
                    return Err(format!(
                        "cocycle entry {:?} must list {} strictly increasing indices",
                        e.args,
                        spec.n + 1
                    ));
                }
                c.add_component(args, parse_rat_str(&e.value)?);
            }
            Some((spec.n, c))
        }
    };

    Ok(Scenario {
        name: file.name.clone(),
        algebra,
        action,
        space,
        omega,
        cartan,
        moment,
        extension,
        expect: file.expect.clone(),
        checks: file.checks.clone(),
        special: BTreeMap::new(),
    })
}

pub fn load_file(path: &std::path::Path) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: ScenarioFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    resolve(&file)
}

/// Executes every named check of the scenario, in order.
pub fn run_scenario(s: &Scenario) -> Report {
    let mut checks = Vec::new();
    for name in &s.checks {
        let start = std::time::Instant::now();
        let outcome = crate::checks::run_check(name, s);
        let millis = start.elapsed().as_millis();
        match outcome {
            Ok(witness) => checks.push(CheckResult {
                name: name.clone(),
                status: Status::Pass,
                witness,
                millis,
            }),
            Err(w) => checks.push(CheckResult {
                name: name.clone(),
                status: Status::Fail,
                witness: Some(w),
                millis,
            }),
        }
    }
    Report {
        scenario: s.name.clone(),
        checks,
    }
}
