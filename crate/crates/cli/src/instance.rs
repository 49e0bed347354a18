//! The JSON instance format and its validation.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use gaudin_core::{
    parse_rat, BetheConfig, Family, GaudinInstance, HpFloat, LieAlgebraSpec, OperatorKind, ProjectorKind, Rat,
    WeightVector,
};
use gaudin_wbridge::CartanType;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Eigen,
    Masterfn,
    SigmaStability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorName {
    Rdet,
    Cdet,
    AntisymTrace,
    SymTrace,
    TracePower,
    BcdTrace,
    Pfaffian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    pub kind: OperatorName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl OperatorEntry {
    pub fn new(kind: OperatorName, m: Option<usize>) -> Self {
        OperatorEntry { kind, m }
    }

    pub fn label(&self) -> String {
        let name = serde_json::to_value(self.kind).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        match self.m {
            Some(m) => format!("{name}:{m}"),
            None => name,
        }
    }

    pub fn operator_kind(&self) -> Option<OperatorKind> {
        Some(match (self.kind, self.m) {
            (OperatorName::Rdet, None) => OperatorKind::Rdet,
            (OperatorName::Cdet, None) => OperatorKind::Cdet,
            (OperatorName::Pfaffian, None) => OperatorKind::Pfaffian,
            (OperatorName::AntisymTrace, Some(m)) => OperatorKind::Projector(ProjectorKind::Antisymmetrizer, m),
            (OperatorName::SymTrace, Some(m)) => OperatorKind::Projector(ProjectorKind::Symmetrizer, m),
            (OperatorName::TracePower, Some(k)) => OperatorKind::TracePower(k),
            (OperatorName::BcdTrace, Some(m)) => OperatorKind::BcdTrace(m),
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootEntry {
    pub w: String,
    /// One-based simple root label.
    pub color: usize,
}

fn default_checks() -> Vec<Check> {
    vec![Check::Eigen]
}

/// One run's input. `n` is `N` for type A and the rank `n` for `o_{2n+1}`, `sp_{2n}`, `o_{2n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InstanceFile {
    pub family: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sites: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub z: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bethe: Vec<RootEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operators: Vec<OperatorEntry>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_checks")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<String>,
}

/// A rejected input, located by a JSON field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub code: &'static str,
    pub path: String,
    pub reason: String,
}

impl InputError {
    pub fn new(code: &'static str, path: impl Into<String>, reason: impl Into<String>) -> Self {
        InputError { code, path: path.into(), reason: reason.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.reason)
        } else {
            write!(f, "{}: {}", self.path, self.reason)
        }
    }
}

impl std::error::Error for InputError {}

type Checked<T> = std::result::Result<T, InputError>;

fn schema(path: impl Into<String>, reason: impl Into<String>) -> InputError {
    InputError::new("schema", path, reason)
}

fn is_decimal(s: &str) -> bool {
    s.contains('.')
}

fn exact_rat(s: &str, path: &str) -> Checked<Rat> {
    if is_decimal(s) {
        return Err(schema(path, "decimals are not allowed here; use \"p/q\""));
    }
    parse_rat(s).ok_or_else(|| schema(path, format!("not a rational: {s:?}")))
}

/// Parses JSON text and validates it in the file's own mode.
pub fn parse_instance_str(text: &str) -> Checked<InstanceFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { path };
        schema(path, e.into_inner().to_string())
    })?;
    file.validate(file.mode)?;
    Ok(file)
}

pub fn parse_instance(path: &Path) -> Checked<InstanceFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new("io", "", format!("cannot read {}: {e}", path.display())))?;
    parse_instance_str(&text)
}

impl InstanceFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }

    pub fn family(&self) -> Checked<Family> {
        Family::parse(&self.family).ok_or_else(|| schema("family", format!("unknown family {:?}; expected A, B, C or D", self.family)))
    }

    pub fn cartan(&self) -> Checked<CartanType> {
        CartanType::new(self.family()?, self.n).map_err(|e| schema("n", e.to_string()))
    }

    pub fn spec(&self) -> Checked<LieAlgebraSpec> {
        LieAlgebraSpec::new(self.family()?, self.n).map_err(|e| schema("n", e.to_string()))
    }

    /// Every check that does not need the Gaudin data, plus the Gaudin data whenever it is present.
    pub fn validate(&self, mode: Mode) -> Checked<()> {
        self.cartan()?;
        for (i, op) in self.operators.iter().enumerate() {
            let needs_m = !matches!(op.kind, OperatorName::Rdet | OperatorName::Cdet | OperatorName::Pfaffian);
            match (needs_m, op.m) {
                (true, None) => return Err(schema(format!("operators[{i}].m"), "required for this kind")),
                (false, Some(_)) => return Err(schema(format!("operators[{i}].m"), "not accepted for this kind")),
                _ => {}
            }
        }
        if let Some(c) = &self.character {
            if c.trim().is_empty() {
                return Err(schema("character", "empty expression"));
            }
        }
        if !self.weights.is_empty() || !self.z.is_empty() || !self.bethe.is_empty() {
            self.gaudin()?;
            self.check_roots(mode)?;
        }
        Ok(())
    }

    /// The Gaudin model data: algebra, weights, evaluation points and twist.
    pub fn gaudin(&self) -> Checked<Arc<GaudinInstance>> {
        let spec = Arc::new(self.spec()?);
        let len = spec.diag_len();
        if self.weights.is_empty() {
            return Err(schema("weights", "at least one site is required"));
        }
        if let Some(s) = self.sites {
            if s != self.weights.len() {
                return Err(schema("sites", format!("{s} sites declared but {} weights given", self.weights.len())));
            }
        }
        if self.z.len() != self.weights.len() {
            return Err(schema("z", format!("expected {} evaluation points, found {}", self.weights.len(), self.z.len())));
        }
        let mut weights = Vec::new();
        for (a, w) in self.weights.iter().enumerate() {
            if w.len() != len {
                return Err(schema(format!("weights[{a}]"), format!("expected {len} entries, found {}", w.len())));
            }
            let v = w.iter().enumerate().map(|(i, x)| exact_rat(x, &format!("weights[{a}][{i}]"))).collect::<Checked<Vec<_>>>()?;
            let v = WeightVector(v);
            spec.check_weight(&v).map_err(|e| schema(format!("weights[{a}]"), e.to_string()))?;
            weights.push(v);
        }
        let z = self.z.iter().enumerate().map(|(a, x)| exact_rat(x, &format!("z[{a}]"))).collect::<Checked<Vec<_>>>()?;
        for a in 0..z.len() {
            if z[..a].contains(&z[a]) {
                return Err(InputError::new("coincident-points", "z", "evalPoints not distinct"));
            }
        }
        let chi = match &self.chi {
            None => WeightVector::zero(len),
            Some(c) => {
                if c.len() != len {
                    return Err(schema("chi", format!("expected {len} entries, found {}", c.len())));
                }
                WeightVector(c.iter().enumerate().map(|(i, x)| exact_rat(x, &format!("chi[{i}]"))).collect::<Checked<Vec<_>>>()?)
            }
        };
        GaudinInstance::new(spec, weights, z, chi).map(Arc::new).map_err(|e| InputError::new(e.code(), "", e.to_string()))
    }

    /// Zero-based colors.
    pub fn colors(&self) -> Vec<usize> {
        self.bethe.iter().map(|r| r.color.saturating_sub(1)).collect()
    }

    fn check_roots(&self, mode: Mode) -> Checked<()> {
        let rank = self.spec()?.rank();
        let z: Vec<Rat> = self.z.iter().filter_map(|x| parse_rat(x)).collect();
        let mut seen: Vec<(usize, Rat)> = Vec::new();
        for (j, r) in self.bethe.iter().enumerate() {
            if r.color == 0 || r.color > rank {
                return Err(schema(format!("bethe[{j}].color"), format!("expected a label in 1..={rank}")));
            }
            let path = format!("bethe[{j}].w");
            if mode == Mode::Exact && is_decimal(&r.w) {
                return Err(schema(path, "decimals are only allowed in float mode"));
            }
            let w = parse_rat(&r.w).ok_or_else(|| schema(path.clone(), format!("not a number: {:?}", r.w)))?;
            if z.contains(&w) {
                return Err(InputError::new("root-collision", path, "root collides with evaluation point"));
            }
            if seen.iter().any(|(c, v)| *c == r.color && *v == w) {
                return Err(InputError::new("root-collision", path, "roots of equal color coincide"));
            }
            seen.push((r.color, w));
        }
        Ok(())
    }

    /// The roots as exact rationals, for exact-mode runs.
    pub fn exact_config(&self) -> Checked<BetheConfig<Rat>> {
        let inst = self.gaudin()?;
        self.check_roots(Mode::Exact)?;
        let roots = self.bethe.iter().map(|r| parse_rat(&r.w).expect("validated")).collect();
        BetheConfig::new(inst, roots, self.colors()).map_err(|e| InputError::new(e.code(), "bethe", e.to_string()))
    }

    /// The roots as high-precision floats.
    pub fn float_seeds(&self) -> Checked<Vec<HpFloat>> {
        self.check_roots(Mode::Float)?;
        Ok(self.bethe.iter().map(|r| HpFloat::parse(&r.w).expect("validated")).collect())
    }

    pub fn operator_kinds(&self) -> Checked<Vec<(String, OperatorKind)>> {
        self.operators
            .iter()
            .enumerate()
            .map(|(i, op)| {
                op.operator_kind()
                    .map(|k| (op.label(), k))
                    .ok_or_else(|| schema(format!("operators[{i}]"), "m is missing or not accepted"))
            })
            .collect()
    }
}
