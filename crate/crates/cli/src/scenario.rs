//! Scenario files: JSON documents naming a mode and its inputs.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thermineq_core::{parse_function, BlockSystem, ScalarFunction, Tolerances};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Reversible,
    Irreversible,
    Reservoir,
    Negcap,
    Jensen,
    Powermean,
    Counterexample,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Reversible => "reversible",
            Mode::Irreversible => "irreversible",
            Mode::Reservoir => "reservoir",
            Mode::Negcap => "negcap",
            Mode::Jensen => "jensen",
            Mode::Powermean => "powermean",
            Mode::Counterexample => "counterexample",
        }
    }
}

/// One piece of a piecewise function, valid from `from` up to the next piece.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub from: f64,
    pub expr: String,
}

/// Either an expression string or `{"pieces": [...], "to": b}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Expr(String),
    Piecewise { pieces: Vec<Piece>, to: f64 },
}

impl FunctionSpec {
    pub fn build(&self) -> Result<ScalarFunction, CliError> {
        Ok(match self {
            FunctionSpec::Expr(text) => parse_function(text, None)?,
            FunctionSpec::Piecewise { pieces, to } => {
                let refs: Vec<(f64, &str)> = pieces.iter().map(|p| (p.from, p.expr.as_str())).collect();
                ScalarFunction::parse_piecewise(&refs, *to)?
            }
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xs: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ys: Option<Vec<f64>>,
    /// Capacity shared by every block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<FunctionSpec>,
    /// One capacity per block, aligned with `xs`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fs: Option<Vec<FunctionSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, alias = "T0", alias = "t0", skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, alias = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, alias = "T1", skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    #[serde(default, alias = "T2", skip_serializing_if = "Option::is_none")]
    pub t2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

impl Scenario {
    pub fn new(mode: Mode) -> Self {
        Scenario {
            mode,
            xs: None,
            ys: None,
            f: None,
            fs: None,
            g: None,
            h: None,
            k: None,
            x0: None,
            a: None,
            b: None,
            c: None,
            t1: None,
            t2: None,
            x1: None,
            x2: None,
            tolerances: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Copy with the numeric field `param` set to `value`; `xs.2` addresses a list entry.
    pub fn with_param(&self, param: &str, value: f64) -> Result<Self, CliError> {
        let mut doc = serde_json::to_value(self).expect("scenario serializes");
        let (name, index) = match param.split_once('.') {
            Some((n, i)) => {
                let i: usize = i.parse().map_err(|_| CliError::Usage(format!("bad index in parameter {param:?}")))?;
                (n, Some(i))
            }
            None => (param, None),
        };
        let name = canonical_field(name).ok_or_else(|| CliError::Usage(format!("{param:?} is not a numeric field")))?;
        let obj = doc.as_object_mut().expect("scenario is an object");
        let slot = match index {
            None => obj.entry(name).or_insert(serde_json::Value::Null),
            Some(i) => obj
                .get_mut(name)
                .and_then(|v| v.as_array_mut())
                .and_then(|a| a.get_mut(i))
                .ok_or_else(|| CliError::Input(format!("scenario has no entry {param}")))?,
        };
        if index.is_none() && matches!(name, "xs" | "ys") {
            return Err(CliError::Usage(format!("{param:?} is a list; sweep one entry, e.g. {name}.0")));
        }
        *slot = serde_json::json!(value);
        serde_json::from_value(doc).map_err(|e| CliError::Input(format!("cannot set {param} = {value}: {e}")))
    }

    pub fn tolerances(&self, base: Tolerances) -> Tolerances {
        let o = self.tolerances.clone().unwrap_or_default();
        Tolerances { verdict: o.verdict.unwrap_or(base.verdict), quad: o.quad.unwrap_or(base.quad), ..base }
    }

    pub fn k(&self) -> u32 {
        self.k.unwrap_or(1)
    }

    pub fn require<T: Clone>(&self, value: &Option<T>, name: &str) -> Result<T, CliError> {
        value.clone().ok_or_else(|| CliError::Input(format!("mode {} requires field {name:?}", self.mode.label())))
    }

    /// Blocks at `xs` with the shared capacity `f` or the per-block list `fs`.
    pub fn block_system(&self) -> Result<BlockSystem, CliError> {
        let xs = self.require(&self.xs, "xs")?;
        match (&self.f, &self.fs) {
            (Some(f), None) => Ok(BlockSystem::shared(xs, f.build()?)?),
            (None, Some(fs)) => {
                if fs.len() != xs.len() {
                    return Err(CliError::Input(format!("{} capacities for {} blocks", fs.len(), xs.len())));
                }
                let blocks =
                    xs.into_iter().zip(fs).map(|(x, f)| Ok((x, f.build()?))).collect::<Result<_, CliError>>()?;
                Ok(BlockSystem::per_block(blocks)?)
            }
            (Some(_), Some(_)) => Err(CliError::Input("give either \"f\" or \"fs\", not both".into())),
            (None, None) => Err(CliError::Input(format!("mode {} requires field \"f\" or \"fs\"", self.mode.label()))),
        }
    }

    /// The weight `g`, defaulting to `x` (temperature).
    pub fn weight(&self) -> Result<ScalarFunction, CliError> {
        match &self.g {
            Some(g) => g.build(),
            None => Ok(ScalarFunction::identity()),
        }
    }
}

fn canonical_field(name: &str) -> Option<&'static str> {
    Some(match name {
        "xs" => "xs",
        "ys" => "ys",
        "k" => "k",
        "x0" | "T0" | "t0" => "x0",
        "a" => "a",
        "b" => "b",
        "c" | "C" => "c",
        "t1" | "T1" => "t1",
        "t2" | "T2" => "t2",
        "x1" => "x1",
        "x2" => "x2",
        _ => return None,
    })
}
