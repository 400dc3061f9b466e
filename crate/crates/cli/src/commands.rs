use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use hexknot::measure::mc_region_volume;
use hexknot::predicates::predicate_class;
use hexknot::sampling::SampleStream;
use hexknot::{
    analytic_volumes, build_hexagon, classify, compare_bound, estimate_with_repeats, lemma_filters, ActionAngleCoords,
    BoundReport, EstimationReport, Hexagon, KnotClass, RegionSpec,
};

use crate::{Command, Format};

const AA_HEADER: [&str; 6] = ["d1", "d2", "d3", "theta1", "theta2", "theta3"];

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Sample {
            n,
            seed,
            format,
            output,
            vertex_output,
        } => sample(n, seed.seed, format, output.as_deref(), vertex_output.as_deref()),
        Command::Classify { input, output } => classify_file(&input, output.as_deref()),
        Command::Estimate {
            samples,
            seed,
            mode,
            workers,
            repeats,
            output,
            format,
            omit_timing,
        } => {
            let workers = workers.map(|w| w as usize);
            let mut report = estimate_with_repeats(samples, seed.seed, mode.into(), workers, repeats)?;
            if omit_timing {
                report = report.without_timing();
            }
            let text = match format {
                Format::Json => report.to_json()? + "\n",
                Format::Csv => format!("{}\n{}\n", EstimationReport::csv_header(), report.csv_row()),
            };
            write_text(output.as_deref(), &text)
        }
        Command::Volumes { samples, seed, format } => volumes(samples, seed.seed, format),
        Command::Bound { with_estimate } => bound(with_estimate.as_deref()),
        Command::Check { coords } => check(&coords),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    let mut out = open_output(path)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cells<const N: usize>(xs: [f64; N]) -> Vec<String> {
    xs.iter().map(f64::to_string).collect()
}

fn vertex_header() -> Vec<String> {
    (1..=6)
        .flat_map(|i| ["x", "y", "z"].map(|c| format!("v{i}{c}")))
        .collect()
}

fn sample(n: u64, seed: u64, format: Format, output: Option<&Path>, vertex_output: Option<&Path>) -> Result<()> {
    let mut vertices = match vertex_output {
        Some(p) => {
            let mut w = csv::Writer::from_writer(open_output(Some(p))?);
            w.write_record(vertex_header())?;
            Some(w)
        }
        None => None,
    };
    let mut out = open_output(output)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(AA_HEADER)?;
            for aa in SampleStream::new(n, seed) {
                w.write_record(cells(aa.to_array()))?;
                if let Some(v) = vertices.as_mut() {
                    v.write_record(cells(build_hexagon(&aa)?.to_row()))?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let mut rows = Vec::new();
            for aa in SampleStream::new(n, seed) {
                let row: BTreeMap<&str, f64> = AA_HEADER.into_iter().zip(aa.to_array()).collect();
                rows.push(row);
                if let Some(v) = vertices.as_mut() {
                    v.write_record(cells(build_hexagon(&aa)?.to_row()))?;
                }
            }
            serde_json::to_writer_pretty(&mut out, &rows)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    if let Some(mut v) = vertices {
        v.flush()?;
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    }
    Ok(text)
}

fn parse_row(record: &csv::StringRecord) -> Option<Vec<f64>> {
    record.iter().map(|c| c.trim().parse::<f64>().ok()).collect()
}

/// Class of one parsed row; coordinates outside the polytope are degenerate.
fn classify_row(values: &[f64]) -> KnotClass {
    if values.len() == 6 {
        let aa = ActionAngleCoords::from_array(values.try_into().expect("six columns"));
        match build_hexagon(&aa) {
            Ok(h) => classify(&h),
            Err(_) => KnotClass::Degenerate,
        }
    } else {
        classify(&Hexagon::from_row(values.try_into().expect("eighteen columns")))
    }
}

fn classify_file(input: &Path, output: Option<&Path>) -> Result<()> {
    let text = read_input(input)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut writer = csv::Writer::from_writer(open_output(output)?);
    let mut width = None;
    let mut counts: BTreeMap<KnotClass, u64> = BTreeMap::new();

    for (index, record) in reader.records().enumerate() {
        let line = index + 1;
        let record = record.with_context(|| format!("line {line}: unreadable CSV"))?;
        let values = parse_row(&record);
        if index == 0 && values.is_none() {
            // header row
            if !matches!(record.len(), 6 | 18) {
                bail!("line 1: expected 6 or 18 columns, found {}", record.len());
            }
            width = Some(record.len());
            let mut header: Vec<&str> = record.iter().collect();
            header.push("class");
            writer.write_record(header)?;
            continue;
        }
        let Some(values) = values else {
            bail!(
                "line {line}: could not parse `{}` as numbers",
                record.iter().collect::<Vec<_>>().join(",")
            );
        };
        match width {
            None if matches!(values.len(), 6 | 18) => width = Some(values.len()),
            None => bail!("line {line}: expected 6 or 18 columns, found {}", values.len()),
            Some(w) if w != values.len() => bail!("line {line}: expected {w} columns, found {}", values.len()),
            Some(_) => {}
        }
        let class = classify_row(&values);
        *counts.entry(class).or_default() += 1;
        let mut row: Vec<&str> = record.iter().collect();
        row.push(class.as_str());
        writer.write_record(row)?;
    }
    writer.flush()?;

    let summary: Vec<String> = KnotClass::ALL
        .iter()
        .map(|c| format!("{c}={}", counts.get(c).copied().unwrap_or(0)))
        .collect();
    eprintln!("{}", summary.join(" "));
    Ok(())
}

fn volumes(samples: u64, seed: u64, format: Format) -> Result<()> {
    let estimates = RegionSpec::ALL
        .iter()
        .enumerate()
        .map(|(i, &r)| mc_region_volume(r, samples, seed.wrapping_add(i as u64)))
        .collect::<hexknot::Result<Vec<_>>>()?;
    let text = match format {
        Format::Json => {
            let body = serde_json::json!({ "analytic": analytic_volumes(), "estimates": estimates });
            serde_json::to_string_pretty(&body)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("region,analytic,estimate,std_error,z_score,hit_fraction\n");
            for e in &estimates {
                s += &format!(
                    "{},{},{},{},{},{}\n",
                    e.region,
                    e.analytic,
                    e.estimate,
                    e.std_error,
                    e.z_score(),
                    e.hit_fraction
                );
            }
            s
        }
    };
    write_text(None, &text)
}

fn bound(with_estimate: Option<&Path>) -> Result<()> {
    let report = match with_estimate {
        Some(p) => {
            let estimate = EstimationReport::read(p)?;
            compare_bound(&estimate)?
        }
        None => BoundReport::analytic(),
    };
    let mut s = format!(
        "upper_bound (14-3pi)/192 = {}\none_over_42 = {}\nbound < 1/42: {}\n",
        report.upper_bound, report.one_over_42, report.bound_below_one_over_42
    );
    if let (Some(est), Some(upper)) = (report.estimate, report.ci95_upper) {
        s += &format!(
            "estimate = {est}\nci95_upper = {upper}\nestimate < bound: {}\n",
            est < report.upper_bound
        );
        s += &format!("estimate < 1/42: {}\n", est < report.one_over_42);
    }
    s += &format!("note: {}\n", report.note);
    write_text(None, &s)
}

fn check(coords: &[f64]) -> Result<()> {
    let aa = ActionAngleCoords::from_array(coords.try_into().context("expected six coordinates")?);
    let h = build_hexagon(&aa)?;
    let class = classify(&h);
    let mut filters = BTreeMap::new();
    for target in KnotClass::TREFOILS {
        let j = target.invariant().expect("trefoil classes have invariants");
        filters.insert(target, lemma_filters(&aa, j)?);
    }
    let body = serde_json::json!({
        "coords": aa.to_array(),
        "class": class,
        "predicate_class": predicate_class(&aa)?,
        "filters": filters,
    });
    write_text(None, &(serde_json::to_string_pretty(&body)? + "\n"))
}
