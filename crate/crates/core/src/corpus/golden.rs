//! Golden tables: hom, ext, tensor and Tor dimensions and torsion-pair
//! membership for every corpus entry, in a line-oriented text format.
//!
//! The same table is produced twice, once from the naive oracles and once
//! from the main engines; both must match the stored file byte for byte.

use std::fmt::Write;

use crate::decompose::dimension_vector;
use crate::equivalence::build_context;
use crate::homology::{ext1, hom_space};
use crate::module::RightModule;
use crate::report::Probe;
use crate::Result;

use super::oracle::{oracle_ext_dim, oracle_hom_dim, oracle_tensor_dim, oracle_tor1_dim};
use super::{enumerate_tilting, s_probes, CorpusEntry, TILTING_BOUND};

pub const GOLDEN_VERSION: u32 = 1;

/// Which implementation supplies the numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Oracle,
    Engine,
}

struct Dims<'a> {
    source: Source,
    bimodule: Option<&'a crate::homology::Bimodule>,
}

impl Dims<'_> {
    fn hom(&self, m: &RightModule, n: &RightModule) -> Result<usize> {
        match self.source {
            Source::Oracle => oracle_hom_dim(m, n),
            Source::Engine => Ok(hom_space(m, n)?.dim()),
        }
    }

    fn ext(&self, m: &RightModule, n: &RightModule) -> Result<usize> {
        match self.source {
            Source::Oracle => oracle_ext_dim(m, n),
            Source::Engine => Ok(ext1(m, n)?.dim()),
        }
    }

    fn tensor(&self, n: &RightModule) -> Result<usize> {
        let x = self.bimodule.expect("context");
        match self.source {
            Source::Oracle => oracle_tensor_dim(n, x),
            Source::Engine => Ok(crate::homology::tensor(n, x)?.module.dim()),
        }
    }

    fn tor(&self, n: &RightModule) -> Result<usize> {
        let x = self.bimodule.expect("context");
        match self.source {
            Source::Oracle => oracle_tor1_dim(n, x),
            Source::Engine => Ok(crate::homology::tor1(n, x)?.module.dim()),
        }
    }
}

fn dimvec(m: &RightModule) -> String {
    dimension_vector(m).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn pair_tables(out: &mut String, d: &Dims, ms: &[Probe]) -> Result<()> {
    for a in ms {
        for b in ms {
            writeln!(out, "hom {} {} {}", a.name, b.name, d.hom(&a.module, &b.module)?).unwrap();
        }
    }
    for a in ms {
        for b in ms {
            writeln!(out, "ext {} {} {}", a.name, b.name, d.ext(&a.module, &b.module)?).unwrap();
        }
    }
    Ok(())
}

/// The golden table of an entry.
pub fn table(entry: &CorpusEntry, source: Source) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# golden table, regenerate with TILTING_BLESS=1").unwrap();
    writeln!(out, "version {GOLDEN_VERSION}").unwrap();
    writeln!(out, "entry {}", entry.name).unwrap();
    writeln!(out, "field {}", entry.algebra.field()).unwrap();
    writeln!(out, "complete {}", entry.complete).unwrap();
    for p in &entry.modules {
        writeln!(out, "module {} {}", p.name, dimvec(&p.module)).unwrap();
    }
    let d = Dims { source, bimodule: None };
    pair_tables(&mut out, &d, &entry.modules)?;
    for t in enumerate_tilting(entry, TILTING_BOUND)? {
        writeln!(out, "tilting {}", t.name).unwrap();
        for p in &entry.modules {
            let in_perp = d.ext(&t.module, &p.module)? == 0;
            let in_free = d.hom(&t.module, &p.module)? == 0;
            let class = match (in_perp, in_free) {
                (true, true) => "both",
                (true, false) => "torsion",
                (false, true) => "torsion-free",
                (false, false) => "neither",
            };
            writeln!(out, "  class {} {}", p.name, class).unwrap();
        }
        let ctx = build_context(&t.module, TILTING_BOUND)?;
        let sd = Dims { source, bimodule: Some(ctx.bimodule()) };
        for n in s_probes(&ctx, &entry.modules)? {
            writeln!(
                out,
                "  sprobe {} {} tensor {} tor {}",
                n.name,
                dimvec(&n.module),
                sd.tensor(&n.module)?,
                sd.tor(&n.module)?
            )
            .unwrap();
        }
    }
    Ok(out)
}

/// Path of the stored table for an entry, relative to the crate root.
pub fn file_name(entry: &str) -> String {
    format!("golden/{entry}.txt")
}
