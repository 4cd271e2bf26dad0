//! The two manifold models: full coordinate charts with exact coefficient
//! equality, and polynomial level sets with sampled-frame equality.

use crate::chart::Chart;
use crate::form::PolyForm;
use crate::levelset::LevelSetChart;

#[derive(Clone, Debug)]
pub enum Space {
    Chart(Chart),
    LevelSet(LevelSetChart),
}

impl Space {
    /// The ambient coordinate chart.
    pub fn chart(&self) -> &Chart {
        match self {
            Space::Chart(c) => c,
            Space::LevelSet(ls) => ls.ambient(),
        }
    }

    pub fn level_set(&self) -> Option<&LevelSetChart> {
        match self {
            Space::Chart(_) => None,
            Space::LevelSet(ls) => Some(ls),
        }
    }

    /// Whether the form is zero on this space; Err carries a witness.
    pub fn form_vanishes(&self, a: &PolyForm) -> Result<(), String> {
        match self {
            Space::Chart(_) => {
                if a.is_zero() {
                    Ok(())
                } else {
                    Err(format!("nonzero form {a}"))
                }
            }
            Space::LevelSet(ls) => ls.form_vanishes(a).map_err(|w| w.to_string()),
        }
    }

    pub fn forms_equal(&self, a: &PolyForm, b: &PolyForm) -> Result<(), String> {
        self.form_vanishes(&a.sub(b))
    }

    /// Representative rational points of the space: the origin of a chart,
    /// or the registered sample points of a level set.
    pub fn base_points(&self) -> Vec<Vec<crate::rational::Rat>> {
        match self {
            Space::Chart(c) => vec![vec![crate::rational::int(0); c.dim()]],
            Space::LevelSet(ls) => ls.sample_points().to_vec(),
        }
    }
}
