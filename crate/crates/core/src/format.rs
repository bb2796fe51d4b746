//! Plain-text file formats.
//!
//! * field config: `key=value` lines for `p`, `k_modulus`, `l_modulus`
//!   (comma-separated, low to high, monic top coefficient included);
//! * vectors: one decimal canonical integer per line;
//! * seeds: `leader:length:value` per class, in leader order;
//! * residual packages: `n=`, `mode=` and `residual=` headers, seed lines,
//!   then `i:value` residual lines (or `e:coefficient` under
//!   `residual=sparse`);
//! * sparse models: `e:coefficient` per term.
//!
//! Blank lines and lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use crate::cyclotomic::CyclotomicPartition;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::residual::{ResidualMode, ResidualPackage};
use crate::sparse::{sparse_eval, ResidualBackend, SparseResidualModel};
use crate::spectral::OrbitSeedVector;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_u64(line: usize, s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, got {s:?}")))
}

fn parse_list(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split(',').map(|part| parse_u64(line, part)).collect()
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn parse_elem(tower: &FieldTower, line: usize, s: &str) -> Result<Elem> {
    let v = parse_u64(line, s)?;
    if v >= tower.order() {
        return Err(parse_err(line, format!("{v} is not below Q = {}", tower.order())));
    }
    Ok(Elem(v))
}

pub fn parse_field_config(text: &str) -> Result<FieldTower> {
    let (mut p, mut k, mut l) = (None, None, None);
    for (line, content) in content_lines(text) {
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected key=value"))?;
        match key.trim() {
            "p" => p = Some(parse_u64(line, value)?),
            "k_modulus" => k = Some(parse_list(line, value)?),
            "l_modulus" => l = Some(parse_list(line, value)?),
            other => return Err(parse_err(line, format!("unknown key {other:?}"))),
        }
    }
    let missing = |key: &str| parse_err(0, format!("missing key {key}"));
    FieldTower::new(
        p.ok_or_else(|| missing("p"))?,
        &k.ok_or_else(|| missing("k_modulus"))?,
        &l.ok_or_else(|| missing("l_modulus"))?,
    )
}

pub fn write_field_config(tower: &FieldTower) -> String {
    format!(
        "p={}\nk_modulus={}\nl_modulus={}\n",
        tower.p(),
        join(tower.k_modulus()),
        join(tower.l_modulus())
    )
}

pub fn parse_vector(tower: &FieldTower, text: &str) -> Result<Vec<Elem>> {
    content_lines(text)
        .map(|(line, s)| parse_elem(tower, line, s))
        .collect()
}

pub fn write_vector(v: &[Elem]) -> String {
    v.iter().fold(String::new(), |mut out, x| {
        let _ = writeln!(out, "{x}");
        out
    })
}

fn parse_seed_line(tower: &FieldTower, line: usize, s: &str) -> Result<(usize, usize, Elem)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(parse_err(line, "expected leader:length:value"));
    }
    Ok((
        parse_u64(line, parts[0])? as usize,
        parse_u64(line, parts[1])? as usize,
        parse_elem(tower, line, parts[2])?,
    ))
}

fn seeds_from_lines(tower: &FieldTower, lines: &[(usize, usize, usize, Elem)]) -> Result<OrbitSeedVector> {
    let n: usize = lines.iter().map(|&(_, _, len, _)| len).sum();
    let partition = CyclotomicPartition::new(n as u64, tower.q())?;
    if partition.kappa() != lines.len() {
        return Err(parse_err(0, format!(
            "{} seed lines, but n = {n} has {} classes",
            lines.len(),
            partition.kappa()
        )));
    }
    for (class, &(line, leader, len, _)) in partition.classes().iter().zip(lines) {
        if class.leader != leader || class.len() != len {
            return Err(parse_err(line, format!(
                "expected class {}:{}, got {leader}:{len}",
                class.leader,
                class.len()
            )));
        }
    }
    let seeds = lines.iter().map(|&(_, _, _, b)| b).collect();
    OrbitSeedVector::new(tower, partition, seeds)
}

/// Seed file; `n` is the sum of the class lengths.
pub fn parse_seeds(tower: &FieldTower, text: &str) -> Result<OrbitSeedVector> {
    let lines = content_lines(text)
        .map(|(line, s)| {
            let (leader, len, b) = parse_seed_line(tower, line, s)?;
            Ok((line, leader, len, b))
        })
        .collect::<Result<Vec<_>>>()?;
    seeds_from_lines(tower, &lines)
}

pub fn write_seeds(seeds: &OrbitSeedVector) -> String {
    let mut out = String::new();
    for (class, b) in seeds.partition().classes().iter().zip(seeds.seeds()) {
        let _ = writeln!(out, "{}:{}:{}", class.leader, class.len(), b);
    }
    out
}

pub fn parse_model(tower: &FieldTower, n: usize, text: &str) -> Result<SparseResidualModel> {
    let terms = content_lines(text)
        .map(|(line, s)| {
            let (e, a) = s
                .split_once(':')
                .ok_or_else(|| parse_err(line, "expected exponent:coefficient"))?;
            Ok((parse_u64(line, e)? as usize, parse_elem(tower, line, a)?))
        })
        .collect::<Result<Vec<_>>>()?;
    SparseResidualModel::new(n, terms)
}

pub fn write_model(model: &SparseResidualModel) -> String {
    model.terms().iter().fold(String::new(), |mut out, (e, a)| {
        let _ = writeln!(out, "{e}:{a}");
        out
    })
}

/// A residual package as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackageFile {
    pub seeds: OrbitSeedVector,
    pub mode: ResidualMode,
    pub residual: ResidualBackend,
}

impl PackageFile {
    pub fn from_package(pkg: &ResidualPackage) -> Self {
        PackageFile {
            seeds: pkg.seeds.clone(),
            mode: pkg.mode,
            residual: ResidualBackend::List(pkg.residual.clone()),
        }
    }

    /// Expands a sparse residual into a support-value list.
    pub fn into_package(self, tower: &FieldTower, omega: Elem) -> Result<ResidualPackage> {
        let residual = match self.residual {
            ResidualBackend::List(list) => list,
            ResidualBackend::Sparse(model) => sparse_eval(tower, &model, omega)?
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        };
        Ok(ResidualPackage {
            seeds: self.seeds,
            residual,
            mode: self.mode,
        })
    }
}

pub fn write_package(file: &PackageFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={}", file.seeds.n());
    let mode = match file.mode {
        ResidualMode::Full => "full",
        ResidualMode::Truncated => "truncated",
    };
    let _ = writeln!(out, "mode={mode}");
    let kind = match file.residual {
        ResidualBackend::List(_) => "list",
        ResidualBackend::Sparse(_) => "sparse",
    };
    let _ = writeln!(out, "residual={kind}");
    out.push_str(&write_seeds(&file.seeds));
    match &file.residual {
        ResidualBackend::List(list) => {
            for (i, h) in list {
                let _ = writeln!(out, "{i}:{h}");
            }
        }
        ResidualBackend::Sparse(model) => out.push_str(&write_model(model)),
    }
    out
}

pub fn parse_package(tower: &FieldTower, text: &str) -> Result<PackageFile> {
    let mut n = None;
    let mut mode = ResidualMode::Full;
    let mut sparse = false;
    let mut seed_lines = Vec::new();
    let mut pairs = Vec::new();
    for (line, s) in content_lines(text) {
        if let Some((key, value)) = s.split_once('=') {
            match (key.trim(), value.trim()) {
                ("n", v) => n = Some(parse_u64(line, v)? as usize),
                ("mode", "full") => mode = ResidualMode::Full,
                ("mode", "truncated") => mode = ResidualMode::Truncated,
                ("residual", "list") => sparse = false,
                ("residual", "sparse") => sparse = true,
                (k, v) => return Err(parse_err(line, format!("bad header {k}={v}"))),
            }
            continue;
        }
        match s.split(':').count() {
            3 => {
                let (leader, len, b) = parse_seed_line(tower, line, s)?;
                seed_lines.push((line, leader, len, b));
            }
            2 => {
                let (i, v) = s.split_once(':').unwrap();
                pairs.push((line, parse_u64(line, i)? as usize, parse_elem(tower, line, v)?));
            }
            _ => return Err(parse_err(line, "expected a seed or residual line")),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing n= header"))?;
    let seeds = seeds_from_lines(tower, &seed_lines)?;
    if seeds.n() != n {
        return Err(parse_err(0, format!("header n={n} but seeds cover {}", seeds.n())));
    }
    let residual = if sparse {
        let terms = pairs.into_iter().map(|(_, e, a)| (e, a)).collect();
        ResidualBackend::Sparse(SparseResidualModel::new(n, terms)?)
    } else {
        for w in pairs.windows(2) {
            if w[1].1 <= w[0].1 {
                return Err(parse_err(w[1].0, "residual indices must increase"));
            }
        }
        if let Some(&(line, i, _)) = pairs.iter().find(|p| p.1 >= n) {
            return Err(parse_err(line, format!("index {i} out of range for n={n}")));
        }
        if let Some(&(line, _, _)) = pairs.iter().find(|p| p.2.is_zero()) {
            return Err(parse_err(line, "residual values must be nonzero"));
        }
        ResidualBackend::List(pairs.into_iter().map(|(_, i, v)| (i, v)).collect())
    };
    Ok(PackageFile {
        seeds,
        mode,
        residual,
    })
}
