use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::distribution::JointDistribution;
use crate::error::{Error, Result};
use crate::polymatroid::GroundSet;

/// Reads the CSV form: header `x_<label>,...,prob`, one row per atom.
/// Alphabet sizes are inferred as one more than the largest symbol seen.
pub fn read_distribution_csv<R: Read>(reader: R) -> Result<JointDistribution> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header = rdr.headers()?.clone();
    let n = header.len().saturating_sub(1);
    if n == 0 || &header[n] != "prob" {
        return Err(Error::Parse("last CSV column must be \"prob\"".into()));
    }
    let labels = (0..n)
        .map(|c| {
            header[c]
                .strip_prefix("x_")
                .map(str::to_string)
                .ok_or_else(|| {
                    Error::Parse(format!("column {:?} must be named x_<label>", &header[c]))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let ground = GroundSet::new(labels)?;
    let mut atoms = Vec::new();
    let mut sizes = vec![1usize; n];
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let bad = |what: &str| Error::Parse(format!("row {}: bad {what}", line + 2));
        let config = (0..n)
            .map(|c| rec[c].trim().parse::<u16>().map_err(|_| bad("symbol")))
            .collect::<Result<Vec<_>>>()?;
        let p: f64 = rec[n].trim().parse().map_err(|_| bad("probability"))?;
        for (s, &x) in sizes.iter_mut().zip(&config) {
            *s = (*s).max(x as usize + 1);
        }
        atoms.push((config, p));
    }
    JointDistribution::new(ground, sizes, atoms)
}

pub fn write_distribution_csv<W: Write>(writer: W, d: &JointDistribution) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = d
        .ground()
        .labels()
        .iter()
        .map(|l| format!("x_{l}"))
        .collect();
    header.push("prob".into());
    wtr.write_record(&header)?;
    for (config, p) in d.atoms() {
        let mut row: Vec<String> = config.iter().map(u16::to_string).collect();
        row.push(p.to_string());
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct DistributionFile {
    labels: Vec<String>,
    alphabet_sizes: Vec<usize>,
    atoms: Vec<AtomEntry>,
}

#[derive(Serialize, Deserialize)]
struct AtomEntry {
    x: Vec<u16>,
    prob: f64,
}

/// JSON mirror of the CSV form, with explicit alphabet sizes.
pub fn distribution_to_json(d: &JointDistribution) -> Result<String> {
    let file = DistributionFile {
        labels: d.ground().labels().to_vec(),
        alphabet_sizes: d.alphabet_sizes().to_vec(),
        atoms: d
            .atoms()
            .map(|(c, p)| AtomEntry {
                x: c.to_vec(),
                prob: p,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn distribution_from_json(text: &str) -> Result<JointDistribution> {
    let file: DistributionFile = serde_json::from_str(text)?;
    JointDistribution::new(
        GroundSet::new(file.labels)?,
        file.alphabet_sizes,
        file.atoms.into_iter().map(|a| (a.x, a.prob)),
    )
}

/// Reads a distribution, choosing the format by extension (`.json` or CSV).
pub fn read_distribution(path: impl AsRef<Path>) -> Result<JointDistribution> {
    let path = path.as_ref();
    if path.extension().is_some_and(|e| e == "json") {
        distribution_from_json(&std::fs::read_to_string(path)?)
    } else {
        read_distribution_csv(std::fs::File::open(path)?)
    }
}
