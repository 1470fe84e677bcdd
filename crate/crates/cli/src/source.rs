//! Where a command's lattice comes from.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use transys::{Lattice, LatticeJson, Limits};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `[n]`
    Chain,
    /// `[1]^n`
    Cube,
    /// `[m] × [n]`
    Rect,
    /// `[2]^{*n}`
    Fuse2,
    /// Subgroups of `C_p × C_p`
    Subcpcp,
    /// Read from `--input`
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Lattice JSON for `--family json`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--family {family} needs {flag}")))
}

impl Source {
    pub fn build(&self, limits: &Limits) -> Result<Arc<Lattice>, Failure> {
        let l = match self.family {
            Family::Chain => Lattice::chain_with(need(self.n, "--n", "chain")?, limits)?,
            Family::Cube => Lattice::boolean_cube_with(need(self.n, "--n", "cube")?, limits)?,
            Family::Rect => Lattice::rectangle(need(self.m, "--m", "rect")?, need(self.n, "--n", "rect")?)?,
            Family::Fuse2 => Lattice::iterated_fusion(&Lattice::chain(2)?, need(self.n, "--n", "fuse2")?)?,
            Family::Subcpcp => Lattice::sub_cp_cp(need(self.p, "--p", "subcpcp")?)?,
            Family::Json => {
                let path = self
                    .input
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("--family json needs --input".into()))?;
                read_lattice(path)?
            }
        };
        Ok(Arc::new(l))
    }
}

pub fn read_lattice(path: &PathBuf) -> Result<Lattice, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let json: LatticeJson =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Lattice::from_json(&json)?)
}

/// `chain:3`, `cube:2`, `rect:2x1`, `fuse2:3`, `subcpcp:5`, `pentagon`, or a
/// path to lattice JSON.
pub fn parse_operand(text: &str) -> Result<Lattice, Failure> {
    let bad = || Failure::Usage(format!("cannot read lattice operand `{text}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let l = match text.split_once(':') {
        Some(("chain", n)) => Lattice::chain(num(n)?)?,
        Some(("cube", n)) => Lattice::boolean_cube(num(n)?)?,
        Some(("fuse2", n)) => Lattice::iterated_fusion(&Lattice::chain(2)?, num(n)?)?,
        Some(("subcpcp", p)) => Lattice::sub_cp_cp(num(p)? as u64)?,
        Some(("rect", dims)) => {
            let (m, n) = dims.split_once('x').ok_or_else(bad)?;
            Lattice::rectangle(num(m)?, num(n)?)?
        }
        None if text == "pentagon" => Lattice::pentagon(),
        None => read_lattice(&PathBuf::from(text))?,
        Some(_) => return Err(bad()),
    };
    Ok(l)
}
