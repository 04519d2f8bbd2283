use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use codoku::enumerator::{enumerate_canonical, GridCensus};
use codoku::palette::PaletteGrid;
use codoku::presets::Setting;
use codoku::puzzle::Puzzle;

use crate::PaletteSource;

/// Setting whose palette is exactly `digest`, if any.
pub fn setting_for_digest(digest: &[u8; 32]) -> Option<Setting> {
    Setting::ALL.into_iter().find(|s| &s.palette().digest() == digest)
}

pub fn parse_setting(s: &str) -> Result<Setting> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

pub fn read_palette(path: &Path) -> Result<PaletteGrid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PaletteGrid::from_json(&text).with_context(|| format!("parsing palette {}", path.display()))
}

pub fn read_census(path: &Path) -> Result<GridCensus> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    GridCensus::read_from(BufReader::new(f)).with_context(|| format!("reading census {}", path.display()))
}

/// The palette (and matching preset, if any) named by the flags, falling
/// back to the preset a census was built for.
pub fn resolve_palette(source: &PaletteSource, census: Option<&GridCensus>) -> Result<(PaletteGrid, Option<Setting>)> {
    let (palette, setting) = if let Some(path) = &source.palette {
        let p = read_palette(path)?;
        let s = setting_for_digest(&p.digest());
        (p, s)
    } else if let Some(name) = &source.setting {
        let s = parse_setting(name)?;
        (s.palette(), Some(s))
    } else if let Some(c) = census {
        let s = setting_for_digest(c.palette_digest())
            .ok_or_else(|| anyhow!("census palette is not a built-in setting; pass --palette"))?;
        (s.palette(), Some(s))
    } else {
        bail!("pass --palette FILE or --setting NAME");
    };
    if let Some(c) = census {
        c.check_palette(&palette)?;
    }
    Ok((palette, setting))
}

/// Loads `--census` or enumerates the palette's census in place.
pub fn census_and_palette(census: Option<&Path>, source: &PaletteSource) -> Result<(GridCensus, PaletteGrid, Option<Setting>)> {
    match census {
        Some(path) => {
            let c = read_census(path)?;
            let (p, s) = resolve_palette(source, Some(&c))?;
            Ok((c, p, s))
        }
        None => {
            let (p, s) = resolve_palette(source, None)?;
            let started = std::time::Instant::now();
            let c = enumerate_canonical(&p);
            eprintln!("enumerated {} canonical grids in {:.2?}", c.canonical_count(), started.elapsed());
            Ok((c, p, s))
        }
    }
}

/// `"lo..hi"` (inclusive) or a single number.
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<usize>> {
    let parse = |v: &str| v.trim().parse::<usize>().with_context(|| format!("bad hint count {v:?}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                bail!("empty hint range {s}");
            }
            Ok(lo..=hi)
        }
        None => {
            let k = parse(s)?;
            Ok(k..=k)
        }
    }
}

pub fn parse_offset(s: &str) -> Result<(u32, u32)> {
    let (r, c) = s.split_once(',').ok_or_else(|| anyhow!("offset must be r,c, got {s:?}"))?;
    Ok((r.trim().parse()?, c.trim().parse()?))
}

/// Every puzzle file named directly or found (as `*.json`) in a directory,
/// in path order.
pub fn read_puzzles(paths: &[PathBuf]) -> Result<Vec<(PathBuf, Puzzle)>> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(path)
                .with_context(|| format!("listing {}", path.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(path.clone());
        }
    }
    files
        .into_iter()
        .map(|f| {
            let text = fs::read_to_string(&f).with_context(|| format!("reading {}", f.display()))?;
            let p = Puzzle::from_json(&text).with_context(|| format!("parsing puzzle {}", f.display()))?;
            Ok((f, p))
        })
        .collect()
}

pub fn out_dir(out: Option<&Path>) -> Result<Option<PathBuf>> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            Ok(Some(dir.to_path_buf()))
        }
        None => Ok(None),
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

pub fn write_census(path: &Path, census: &GridCensus) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    census.write_to(BufWriter::new(f))?;
    Ok(())
}
