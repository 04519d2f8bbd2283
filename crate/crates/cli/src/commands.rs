use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use codoku::bundle::Bundle;
use codoku::enumerator::{count_special, enumerate_canonical, GridCensus};
use codoku::lee::{
    anticode_size_formula, ball_size_formula, construct_diameter_code, construct_perfect_code, default_core_offset,
    diameter_modulus, minimum_distance, perfect_modulus, Point,
};
use codoku::minimal::{class_representatives, minimal_census, sample_minimal_retrying};
use codoku::palette::{palette_from_diameter, palette_from_perfect, PaletteGrid, Provenance};
use codoku::presets::Setting;
use codoku::puzzle::{Level, Puzzle};
use codoku::rater::{rate_all, LevelTable};
use codoku::symmetry::{classify as classify_census, generate_group, render_table, subgroup_reports, RigidMotion, SymmetryGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::io::{self, census_and_palette, out_dir, write_json, write_text};
use crate::{expect, BundleArgs, Case, ClassifyArgs, Common, ConstructArgs, EnumerateArgs, MinimalArgs, PaletteSource, RateArgs, SampleArgs, SpecialArgs};

fn finish(common: &Common, summary: &Value) -> Result<()> {
    if let Some(dir) = out_dir(common.out.as_deref())? {
        write_json(&dir.join("summary.json"), summary)?;
    }
    expect::check(common.expect.as_deref(), summary)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn code_family(palette: &PaletteGrid) -> Option<String> {
    match palette.provenance() {
        Provenance::Perfect { code } | Provenance::Diameter { code, .. } => Some(code.family.to_string()),
        _ => None,
    }
}

pub fn construct(a: ConstructArgs) -> Result<()> {
    let (r, c) = io::parse_offset(&a.offset)?;
    let (code, palette, region_size) = if a.perfect {
        let n = perfect_modulus(a.t);
        let code = construct_perfect_code(a.t, Point::new(r, c, n)?, a.swap)?;
        let palette = palette_from_perfect(&code)?;
        (code, palette, ball_size_formula(2, a.t))
    } else {
        let n = diameter_modulus(a.t);
        let i = match a.case {
            Case::I => 0,
            Case::II if a.index == 0 => bail!("case II needs --index between 1 and t"),
            Case::II => a.index,
        };
        let code = construct_diameter_code(a.t, i, Point::new(r, c, n)?)?;
        let palette = palette_from_diameter(&code, default_core_offset(n))?;
        (code, palette, anticode_size_formula(2, a.t))
    };
    let n = code.n as u64;
    let dmin = minimum_distance(&code)?;
    let packing = code.len() as u64 * region_size == n * n;
    if !packing || palette.regions().iter().any(|reg| reg.len() as u64 != region_size) {
        bail!("regions of {} cells do not fill Z_{n}^2", region_size);
    }
    println!(
        "{} code t={} over Z_{}: {} codewords, minimum distance {dmin}",
        code.family,
        code.t,
        code.n,
        code.len()
    );
    println!("tiling verified: {} regions of {region_size} cells", code.len());
    print!("{palette}");

    let summary = json!({
        "family": code.family.to_string(),
        "n": code.n,
        "t": code.t,
        "codewords": code.len(),
        "min_distance": dmin,
        "region_size": region_size,
        "palette": palette.rows(),
    });
    if let Some(dir) = out_dir(a.common.out.as_deref())? {
        write_json(&dir.join("code.json"), &serde_json::to_value(&code)?)?;
        write_text(&dir.join("palette.json"), &(palette.to_json()? + "\n"))?;
    }
    finish(&a.common, &summary)
}

pub fn enumerate(a: EnumerateArgs) -> Result<()> {
    let (palette, setting) = io::resolve_palette(&a.source, None)?;
    let started = Instant::now();
    let census = enumerate_canonical(&palette);
    eprintln!("enumeration took {:.2?}", started.elapsed());
    println!("canonical={} total={}", census.canonical_count(), census.total_count());
    let summary = json!({
        "setting": setting.map(|s| s.name()),
        "n": census.n(),
        "canonical": census.canonical_count(),
        "total": census.total_count() as u64,
        "palette_digest": hex(census.palette_digest()),
    });
    if let Some(dir) = out_dir(a.common.out.as_deref())? {
        io::write_census(&dir.join("census.bin"), &census)?;
    }
    finish(&a.common, &summary)
}

/// Groups named by `which`: `all`, a preset key, or `;`-separated words.
fn resolve_groups(which: &str, setting: Option<Setting>, n: u32) -> Result<Vec<(String, SymmetryGroup)>> {
    if let Some(s) = setting {
        let presets = s.groups();
        if which == "all" {
            return Ok(presets.into_iter().map(|(k, g)| (k.to_string(), g)).collect());
        }
        if let Some((k, g)) = presets.into_iter().find(|(k, _)| *k == which) {
            return Ok(vec![(k.to_string(), g)]);
        }
        if which == "help" {
            let keys: Vec<_> = s.groups().iter().map(|(k, g)| format!("{k} = {}", g.name)).collect();
            bail!("groups for {s}: all, {}", keys.join(", "));
        }
    } else if which == "all" {
        bail!("`all` needs a built-in setting; give generator words instead");
    }
    let gens = which
        .split(';')
        .map(|w| RigidMotion::parse_word(w.trim(), n))
        .collect::<codoku::Result<Vec<_>>>()
        .with_context(|| format!("unknown group {which:?}"))?;
    let label = format!("<{}>", gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    Ok(vec![(which.to_string(), generate_group(&gens)?.named(label))])
}

fn orbit_summary(census: &GridCensus, keyed: &[(String, codoku::symmetry::OrbitReport)]) -> Result<Value> {
    let mut groups = serde_json::Map::new();
    for (key, rep) in keyed {
        if rep.mass() != census.canonical_count() {
            bail!("orbit sizes of {} sum to {}, census has {}", rep.group, rep.mass(), census.canonical_count());
        }
        let mut v = rep.to_json();
        v["order"] = json!(rep.group_order);
        groups.insert(key.clone(), v);
    }
    Ok(json!({ "canonical": census.canonical_count(), "groups": groups }))
}

pub fn classify(a: ClassifyArgs) -> Result<()> {
    let (census, palette, setting) = census_and_palette(a.census.as_deref(), &a.source)?;
    let groups = resolve_groups(&a.group, setting, palette.n() as u32)?;
    let started = Instant::now();
    let just: Vec<SymmetryGroup> = groups.iter().map(|(_, g)| g.clone()).collect();
    let reports = subgroup_reports(&census, &palette, &just)?;
    eprintln!("classification took {:.2?}", started.elapsed());
    print!("{}", render_table(&reports));
    let keyed: Vec<_> = groups.into_iter().map(|(k, _)| k).zip(reports.iter().cloned()).collect();
    let summary = orbit_summary(&census, &keyed)?;
    if let Some(dir) = out_dir(a.common.out.as_deref())? {
        write_text(&dir.join("orbits.md"), &render_table(&reports))?;
    }
    finish(&a.common, &summary)
}

pub fn special(a: SpecialArgs) -> Result<()> {
    let source = PaletteSource {
        palette: None,
        setting: a.setting.clone(),
    };
    let (census, _, setting) = census_and_palette(a.census.as_deref(), &source)?;
    let setting = setting.ok_or_else(|| anyhow!("special grids need a built-in setting"))?;
    let family = setting.family();
    let found = count_special(&census, &family);
    println!(
        "family of {} codes: special canonical={} total={}",
        family.len(),
        found.canonical.len(),
        found.total
    );
    for &i in &found.canonical {
        print!("\n{}", census.grid(i));
    }
    let summary = json!({
        "family_size": family.len(),
        "canonical": found.canonical.len(),
        "total": found.total as u64,
        "grids": found.canonical.iter().map(|&i| census.grid(i).rows()).collect::<Vec<_>>(),
    });
    finish(&a.common, &summary)
}

pub fn minimal(a: MinimalArgs) -> Result<()> {
    let (census, palette, setting) = census_and_palette(a.census.as_deref(), &a.source)?;
    let (_, group) = resolve_groups(&a.group, setting, palette.n() as u32)?
        .pop()
        .ok_or_else(|| anyhow!("no group"))?;
    let report = classify_census(&census, &palette, &group)?;
    let reps = class_representatives(&census, &report);
    eprintln!("{} classes under {}", reps.len(), group.name);
    let out = out_dir(a.common.out.as_deref())?;
    let mut csv = String::from("k");
    for i in 0..reps.len() {
        let _ = write!(csv, ",class_{}", i + 1);
    }
    csv.push_str(",up_to_equivalence,total\n");
    let mut rows = serde_json::Map::new();
    for &k in &a.k {
        let started = Instant::now();
        let (row, masks) = minimal_census(&reps, &palette, k)?;
        eprintln!("k={k} took {:.2?}", started.elapsed());
        println!(
            "k={k}: per class {:?}, up to equivalence {}, total {}",
            row.per_class, row.up_to_equivalence, row.total
        );
        let counts: Vec<String> = row.per_class.iter().map(u64::to_string).collect();
        let _ = writeln!(csv, "{k},{},{},{}", counts.join(","), row.up_to_equivalence, row.total);
        if let Some(dir) = &out {
            let sub = dir.join(format!("minimal_k{k}"));
            for (ci, (rep, class_masks)) in reps.iter().zip(&masks).enumerate() {
                for (j, &mask) in class_masks.iter().enumerate() {
                    let mut p = Puzzle::from_mask(palette.clone(), &rep.grid, mask)?;
                    let id = format!("k{k}-c{:02}-{j:05}", ci + 1);
                    p.meta.id = Some(id.clone());
                    p.meta.code = setting.map(|s| s.name().to_string());
                    p.meta.family = code_family(&palette);
                    write_text(&sub.join(format!("{id}.json")), &(p.to_json()? + "\n"))?;
                }
            }
        }
        rows.insert(k.to_string(), serde_json::to_value(&row)?);
    }
    let summary = json!({
        "group": group.name,
        "classes": reps.len(),
        "orbit_sizes": reps.iter().map(|r| r.orbit_size).collect::<Vec<_>>(),
        "weights": reps.iter().map(|r| r.weight).collect::<Vec<_>>(),
        "rows": rows,
    });
    if let Some(dir) = &out {
        write_text(&dir.join("minimal.csv"), &csv)?;
    }
    finish(&a.common, &summary)
}

pub fn sample(a: SampleArgs) -> Result<()> {
    let range = io::parse_k_range(&a.k)?;
    let (census, palette, setting) = census_and_palette(a.census.as_deref(), &a.source)?;
    if census.canonical_count() == 0 {
        bail!("palette has no Sudoku grids");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let out = out_dir(a.common.out.as_deref())?;
    let mut ks = Vec::new();
    for i in 0..a.count {
        let index = rng.gen_range(0..census.canonical_count() as usize);
        let seed = rng.gen::<u64>();
        let mut p = sample_minimal_retrying(&census.grid(index), &palette, range.clone(), seed, 256)
            .with_context(|| format!("puzzle {i} from grid #{index}"))?;
        let id = format!("s{}-{i:04}", a.seed);
        p.meta.id = Some(id.clone());
        p.meta.code = setting.map(|s| s.name().to_string());
        p.meta.family = code_family(&palette);
        println!("{id}: grid #{index}, seed {}, k={}", p.meta.seed.unwrap_or(seed), p.k());
        ks.push(p.k());
        if let Some(dir) = &out {
            write_text(&dir.join("puzzles").join(format!("{id}.json")), &(p.to_json()? + "\n"))?;
        }
    }
    finish(&a.common, &json!({ "seed": a.seed, "count": a.count, "k": ks }))
}

fn fill_ids(puzzles: &mut [(std::path::PathBuf, Puzzle)]) {
    for (path, p) in puzzles.iter_mut() {
        if p.meta.id.is_none() {
            p.meta.id = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
    }
}

fn levels_json(table: &LevelTable) -> Value {
    let rows: BTreeMap<String, Value> = table
        .rows
        .iter()
        .map(|(k, c)| (k.to_string(), json!({"easy": c.easy, "medium": c.medium, "hard": c.hard, "total": c.total()})))
        .collect();
    json!(rows)
}

pub fn rate(a: RateArgs) -> Result<()> {
    let mut loaded = io::read_puzzles(&a.puzzles)?;
    if loaded.is_empty() {
        bail!("no puzzles found");
    }
    fill_ids(&mut loaded);
    let puzzles: Vec<Puzzle> = loaded.iter().map(|(_, p)| p.clone()).collect();
    let started = Instant::now();
    let reports = rate_all(&puzzles, a.runs, a.seed);
    eprintln!("rated {} puzzles in {:.2?}", puzzles.len(), started.elapsed());
    let table = LevelTable::from_reports(&reports);
    print!("{}", table.render());
    let summary = json!({
        "runs": a.runs,
        "seed": a.seed,
        "puzzles": puzzles.len(),
        "levels": levels_json(&table),
        "max_score": table.max_score,
    });
    if let Some(dir) = out_dir(a.common.out.as_deref())? {
        write_text(&dir.join("levels.csv"), &table.to_csv())?;
        write_json(&dir.join("reports.json"), &serde_json::to_value(&reports)?)?;
        if a.annotate {
            for ((path, p), rep) in loaded.iter_mut().zip(&reports) {
                p.meta.difficulty = Some(rep.difficulty());
                let name = path.file_name().ok_or_else(|| anyhow!("bad path {}", path.display()))?;
                write_text(&dir.join("puzzles").join(name), &(p.to_json()? + "\n"))?;
            }
        }
    } else if a.annotate {
        bail!("--annotate needs --out");
    }
    finish(&a.common, &summary)
}

pub fn export_bundle(a: BundleArgs) -> Result<()> {
    let mut loaded = io::read_puzzles(&a.puzzles)?;
    fill_ids(&mut loaded);
    let mut puzzles: Vec<Puzzle> = loaded.into_iter().map(|(_, p)| p).collect();
    let unrated: Vec<usize> = (0..puzzles.len()).filter(|&i| puzzles[i].meta.difficulty.is_none()).collect();
    if !unrated.is_empty() {
        let subset: Vec<Puzzle> = unrated.iter().map(|&i| puzzles[i].clone()).collect();
        for (i, rep) in unrated.iter().zip(rate_all(&subset, a.runs, a.seed)) {
            puzzles[*i].meta.difficulty = Some(rep.difficulty());
        }
    }
    let bundle = Bundle::new(&puzzles)?;
    let mut counts = BTreeMap::new();
    for p in &puzzles {
        let level = p.meta.difficulty.as_ref().map_or(Level::Easy, |d| d.level);
        *counts.entry(level.to_string()).or_insert(0u64) += 1;
    }
    let text = bundle.to_json()? + "\n";
    match out_dir(a.common.out.as_deref())? {
        Some(dir) => {
            write_text(&dir.join("bundle.json"), &text)?;
            println!("bundle of {} puzzles written to {}", puzzles.len(), dir.join("bundle.json").display());
        }
        None => print!("{text}"),
    }
    finish(&a.common, &json!({ "puzzles": puzzles.len(), "levels": counts }))
}
