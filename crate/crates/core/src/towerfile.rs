//! Tower description files (TOML).
//!
//! ```toml
//! constants = ["n"]
//!
//! [[generator]]
//! name = "x"
//! delta = "1"
//! seed_reps = ["x"]
//!
//! [[generator]]
//! name = "t1"
//! delta = "1/(x+1)"
//!
//! [options]
//! se_window = 20
//! ring_fast_path = "auto"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::DEFAULT_SE_WINDOW;
use crate::reduction::{validate_tower, FastPathMode, LevelVerdict, ReductionContext, ReductionOptions};
use crate::syntax::{parse_expression, parse_poly};
use crate::tower::TowerSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerFile {
    #[serde(default)]
    pub constants: Vec<String>,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub options: OptionsEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub delta: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seed_reps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsEntry {
    #[serde(default = "default_window")]
    pub se_window: usize,
    #[serde(default)]
    pub ring_fast_path: FastPathMode,
}

fn default_window() -> usize {
    DEFAULT_SE_WINDOW
}

impl Default for OptionsEntry {
    fn default() -> OptionsEntry {
        OptionsEntry { se_window: DEFAULT_SE_WINDOW, ring_fast_path: FastPathMode::Auto }
    }
}

impl TowerFile {
    pub fn parse(src: &str) -> Result<TowerFile> {
        toml::from_str(src).map_err(|e| Error::InvalidTower(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<TowerFile> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidTower(format!("cannot read {}: {e}", path.display())))?;
        TowerFile::parse(&src)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("tower files serialize")
    }

    pub fn options(&self) -> ReductionOptions {
        ReductionOptions {
            se_window: self.options.se_window,
            fast_path: self.options.ring_fast_path,
            ..ReductionOptions::default()
        }
    }

    pub fn tower(&self) -> Result<TowerSpec> {
        let mut tower = TowerSpec::new(self.constants.clone())?;
        for g in &self.generators {
            let delta = parse_expression(&g.delta, &tower)
                .map_err(|e| Error::InvalidTower(format!("difference of `{}`: {e}", g.name)))?;
            tower.push_generator(g.name.clone(), delta)?;
        }
        Ok(tower)
    }

    /// Builds a reduction context with the given options, seeding the
    /// representative sets. A generator whose difference is summable one level
    /// below is rejected; levels that cannot be decided are left to fail later.
    pub fn context_with(&self, options: ReductionOptions) -> Result<ReductionContext> {
        let mut ctx = ReductionContext::new(self.tower()?, options);
        for (i, g) in self.generators.iter().enumerate() {
            for rep in &g.seed_reps {
                let p = parse_poly(rep, ctx.tower(), i + 1)?;
                ctx.seed_representative(i + 1, &p.monic())
                    .map_err(|e| Error::InvalidTower(format!("seed representative `{rep}` of `{}`: {e}", g.name)))?;
            }
        }
        for (level, verdict) in validate_tower(&mut ctx).into_iter().enumerate() {
            if let LevelVerdict::Summable { .. } = verdict {
                return Err(Error::NotSigmaMonomial { name: ctx.tower().generator_name(level + 1).to_string() });
            }
        }
        Ok(ctx)
    }

    pub fn context(&self) -> Result<ReductionContext> {
        self.context_with(self.options())
    }
}
