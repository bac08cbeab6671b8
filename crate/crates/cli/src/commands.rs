use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use epls::eprim::{is_extremely_primitive, is_three_halves_transitive, survey, DEFAULT_SURVEY_CAP};
use epls::families::{
    build_affine_geometry_lines, build_affine_group, build_difference_set_space, build_gscript,
    build_psl2_dihedral_coset, AffineParams, DEFAULT_SEED, MAX_INCIDENCES,
};
use epls::perm::io::{format_group, parse_group};
use epls::refine::{construct_refinement, roundtrip_check, RefineOptions};
use epls::star::{
    build_ls, check_line_block_law, has_property_star, is_line_transitive, is_transverse,
    line_stabilizer_report, search_orbit_union_spaces,
};
use epls::{GroupSpacePair, LinearSpace, PermGroup};
use serde_json::{json, Value};

use crate::output::render;
use crate::{Cli, Command, ConstructArgs, Family, Predicate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    True = 0,
    False = 1,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }
}

struct Budget {
    bytes: u128,
    mib: u64,
}

impl Budget {
    fn new(mib: u64) -> Self {
        Budget {
            bytes: (mib as u128) << 20,
            mib,
        }
    }

    fn check_degree(&self, degree: u128) -> Result<()> {
        let need = 8 * degree * degree;
        if need > self.bytes {
            bail!(
                "degree {degree} needs about {} MiB for a stabiliser chain, above --max-memory {} MiB",
                need >> 20,
                self.mib
            );
        }
        Ok(())
    }

    fn incidence_cap(&self) -> u128 {
        (self.bytes / 8).min(MAX_INCIDENCES)
    }
}

fn seed() -> Result<u64> {
    match std::env::var("EPLS_SEED") {
        Ok(s) => {
            let s = s.trim();
            let parsed = match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => s.parse(),
            };
            parsed.with_context(|| format!("EPLS_SEED `{s}` is not a u64"))
        }
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_group(path: &Path, budget: &Budget) -> Result<PermGroup> {
    let text = read(path)?;
    let degree = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .and_then(|l| l.strip_prefix("degree"))
        .and_then(|n| n.trim().parse::<u128>().ok());
    if let Some(d) = degree {
        budget.check_degree(d)?;
    }
    parse_group(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_space(path: &Path) -> Result<LinearSpace> {
    LinearSpace::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn space_or_ls(path: Option<&Path>, group: &PermGroup) -> Result<LinearSpace> {
    match path {
        Some(p) => load_space(p),
        None => Ok(build_ls(group)?),
    }
}

fn line_or_first(line: &[usize], space: &LinearSpace) -> Result<Vec<usize>> {
    if !line.is_empty() {
        return Ok(line.to_vec());
    }
    let first = space.lines().first().ok_or_else(|| anyhow!("space has no lines"))?;
    Ok(first.iter().map(|&x| x as usize).collect())
}

fn need<T>(v: Option<T>, family: &str, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("--family {family} needs --{flag}"))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let budget = Budget::new(cli.max_memory);
    let (report, outcome) = match &cli.command {
        Command::Construct(a) => (construct(a, &budget)?, Outcome::True),
        Command::Test(a) => {
            let g = load_group(&a.group, &budget)?;
            let (verdict, report) = test(a.predicate, &g, a.space.as_deref())?;
            (report, verdict.into())
        }
        Command::Survey(a) => {
            if a.max_points > DEFAULT_SURVEY_CAP && !a.force {
                bail!("--max-points {} is above the cap {DEFAULT_SURVEY_CAP}; pass --force", a.max_points);
            }
            budget.check_degree(a.max_points as u128)?;
            let records = survey(a.max_points, a.jobs)?;
            let mut lines = String::new();
            for r in &records {
                lines.push_str(&serde_json::to_string(r)?);
                lines.push('\n');
            }
            match &a.out {
                Some(p) => write(p, &lines)?,
                None => std::io::stdout().write_all(lines.as_bytes())?,
            }
            let disagreements = records.iter().filter(|r| !r.agree).count();
            let summary = json!({
                "instances": records.len(),
                "extremely_primitive": records.iter().filter(|r| r.ep_direct).count(),
                "disagreements": disagreements,
                "orbit_condition_disagreements": records.iter().filter(|r| !r.orbit_conditions_agree).count(),
            });
            eprint!("{}", render(&summary, cli.json));
            return Ok((disagreements == 0).into());
        }
        Command::Ls(a) => {
            let g = load_group(&a.group, &budget)?;
            let s = build_ls(&g)?;
            if let Some(p) = &a.out {
                write(p, &s.to_text())?;
            }
            let pair = GroupSpacePair::new(s, g.clone())?;
            let mut report = json!({
                "parameters": pair.space().parameters(),
                "line_sizes": pair.space().line_size_histogram(),
                "line_transitive": is_line_transitive(&pair)?,
                "transverse": is_transverse(&pair).is_none(),
            });
            if a.stabilizers {
                report["stabilizers"] = serde_json::to_value(line_stabilizer_report(&g, 0, 1)?)?;
            }
            (report, Outcome::True)
        }
        Command::Refine(a) => {
            let g = load_group(&a.group, &budget)?;
            let parent = space_or_ls(a.space.as_deref(), &g)?;
            let line = line_or_first(&a.line, &parent)?;
            let inner = load_space(&a.inner)?;
            let pair = GroupSpacePair::new(parent, g)?;
            let opts = RefineOptions {
                incidence_cap: budget.incidence_cap(),
                ..RefineOptions::default()
            };
            let r = construct_refinement(&pair, &line, &inner, opts)?;
            if let Some(p) = &a.out {
                write(p, &r.space.to_text())?;
            }
            let mut report = serde_json::to_value(r.report())?;
            report["refines_parent"] = r.space.is_refinement(pair.space())?.into();
            report["line"] = json!(line);
            (report, Outcome::True)
        }
        Command::Roundtrip(a) => {
            let g = load_group(&a.group, &budget)?;
            let parent = space_or_ls(a.space.as_deref(), &g)?;
            let line = line_or_first(&a.line, &parent)?;
            let refined = load_space(&a.refined)?;
            let pair = GroupSpacePair::new(parent, g)?;
            let ok = roundtrip_check(&refined, &pair, &line)?;
            (json!({ "roundtrip": if ok { "PASS" } else { "FAIL" }, "line": line }), ok.into())
        }
        Command::Search(a) => {
            let hits = search_orbit_union_spaces(a.max_points)?;
            let others = hits.iter().filter(|h| !h.is_projective_plane_of_order_3).count();
            let report = json!({
                "max_points": a.max_points,
                "hits": hits,
                "other_than_plane_of_order_3": others,
            });
            (report, Outcome::True)
        }
    };
    print!("{}", render(&report, cli.json));
    Ok(outcome)
}

fn construct(a: &ConstructArgs, budget: &Budget) -> Result<Value> {
    let mut group = None;
    let mut space = None;
    let stem = match a.family {
        Family::Affine => {
            let (p, d, t, e) = (
                need(a.p, "affine", "p")?,
                need(a.d, "affine", "d")?,
                need(a.t, "affine", "t")?,
                need(a.e, "affine", "e")?,
            );
            let params = AffineParams::new(p, d, t, e)?;
            budget.check_degree(params.q() as u128)?;
            group = Some(build_affine_group(params)?);
            format!("affine-{p}-{d}-{t}-{e}")
        }
        Family::Gscript => {
            let (p, d) = (need(a.p, "gscript", "p")?, need(a.d, "gscript", "d")?);
            let q = epls::gf::numtheory::checked_prime_power(p, d)
                .ok_or_else(|| anyhow!("{p}^{d} overflows"))?;
            budget.check_degree(q as u128 * q as u128)?;
            group = Some(build_gscript(p, d)?);
            format!("gscript-{p}-{d}")
        }
        Family::Psl2 => {
            let q = need(a.q, "psl2", "q")?;
            if q >= 3 {
                budget.check_degree((q as u128 - 1) * (q as u128 - 2) / 2)?;
            }
            group = Some(build_psl2_dihedral_coset(q, seed()?)?.group);
            format!("psl2-{q}")
        }
        Family::Diffset => {
            let m = need(a.modulus, "diffset", "mod")?;
            if a.set.is_empty() {
                bail!("--family diffset needs --set");
            }
            budget.check_degree(m as u128)?;
            let (s, g) = build_difference_set_space(m, &a.set)?;
            space = Some(s);
            group = Some(g);
            format!("diffset-{m}")
        }
        Family::Ag => {
            let (p, m, n) = (need(a.p, "ag", "p")?, need(a.m, "ag", "m")?, need(a.n, "ag", "n")?);
            space = Some(build_affine_geometry_lines(p, m, n)?);
            format!("ag-{p}-{m}-{n}")
        }
    };
    let mut files = Vec::new();
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        if let Some(g) = &group {
            let path = dir.join(format!("{stem}.group"));
            write(&path, &format_group(g))?;
            files.push(path.display().to_string());
        }
        if let Some(s) = &space {
            let path = dir.join(format!("{stem}.space"));
            write(&path, &s.to_text())?;
            files.push(path.display().to_string());
        }
    }
    let mut report = json!({ "name": stem, "files": files });
    if let Some(g) = &group {
        report["degree"] = g.degree().into();
        report["order"] = g.order().to_string().into();
    }
    if let Some(s) = &space {
        report["parameters"] = serde_json::to_value(s.parameters())?;
    }
    Ok(report)
}

fn test(pred: Predicate, g: &PermGroup, space: Option<&Path>) -> Result<(bool, Value)> {
    Ok(match pred {
        Predicate::Ep => {
            let v = is_extremely_primitive(g)?;
            (v.extremely_primitive, json!({ "predicate": "ep", "verdict": v.extremely_primitive, "witness": v.stage }))
        }
        Predicate::Star => {
            let c = has_property_star(g)?;
            (c.is_none(), json!({ "predicate": "star", "verdict": c.is_none(), "witness": c }))
        }
        Predicate::ThreeHalves => {
            let verdict = is_three_halves_transitive(g)?;
            let sub = g.rank_and_subdegrees()?;
            (verdict, json!({ "predicate": "three-halves", "verdict": verdict, "subdegrees": sub }))
        }
        Predicate::Transverse => {
            let pair = GroupSpacePair::new(space_or_ls(space, g)?, g.clone())?;
            let w = is_transverse(&pair);
            (w.is_none(), json!({ "predicate": "transverse", "verdict": w.is_none(), "witness": w }))
        }
        Predicate::Lineblocks => {
            let pair = GroupSpacePair::new(space_or_ls(space, g)?, g.clone())?;
            let r = check_line_block_law(&pair)?;
            (
                r.holds,
                json!({
                    "predicate": "lineblocks",
                    "verdict": r.holds,
                    "observed": r.observed,
                    "witness": r.witness,
                }),
            )
        }
    })
}
