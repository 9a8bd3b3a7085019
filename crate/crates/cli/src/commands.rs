use serde::{Deserialize, Serialize};
use serde_json::json;

use witt2rep::cache::Cache;
use witt2rep::chartab::{DegreeMultiset, ModularCharacterTable};
use witt2rep::clifford::{compare_rings_with, AnalysisOptions, ComparisonReport, Fresh, TableSource};
use witt2rep::config::{RunConfig, CODE_VERSION};
use witt2rep::group::{GroupScheme, MatrixGroup};
use witt2rep::par::Exec;
use witt2rep::ring::{parse_ring, GaloisField, LocalRing};

use crate::{Cli, Command, Failure, OutFormat, Target};

/// What a command prints and how it exits. Cached verbatim.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Outcome {
    pub output: String,
    pub exit_code: u8,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, exit_code: 0, failure: None }
    }
}

pub struct Ctx<'a> {
    pub cli: &'a Cli,
    pub config: RunConfig,
    pub opts: AnalysisOptions,
    pub cache: Option<Cache>,
}

impl Ctx<'_> {
    pub fn out(&self) -> OutFormat {
        self.cli.global.out
    }

    pub fn source(&self) -> &dyn TableSource {
        match &self.cache {
            Some(c) => c,
            None => &Fresh,
        }
    }

    pub fn group(&self, scheme: GroupScheme, ring: LocalRing) -> Result<MatrixGroup, Failure> {
        Ok(self.source().group(scheme, ring, &self.opts)?)
    }

    pub fn table(&self, g: &MatrixGroup) -> Result<ModularCharacterTable, Failure> {
        Ok(self.source().table(g, &self.opts)?)
    }

    pub fn config_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.config).expect("config serialises")
    }
}

fn field(q: u32) -> Result<GaloisField, Failure> {
    Ok(GaloisField::of_order(q)?)
}

/// Resolve `--ring`, `--q`, `--r` into a ring.
pub fn resolve_ring(t: &Target) -> Result<LocalRing, Failure> {
    let given = t.ring.as_deref().ok_or_else(|| Failure::Usage("--ring is required".into()))?;
    let ring = match given {
        "equal" | "mixed" => {
            let q = t.q.ok_or_else(|| Failure::Usage(format!("--ring {given} needs --q")))?;
            let r = t.r.unwrap_or(2);
            if given == "equal" {
                LocalRing::truncated_poly(field(q)?, r)?
            } else {
                LocalRing::mixed(field(q)?, r)?
            }
        }
        desc => parse_ring(desc)?,
    };
    if let Some(q) = t.q {
        if ring.residue_field().order() != q {
            return Err(Failure::Usage(format!("{ring} has residue field of order {}, not {q}", ring.residue_field().order())));
        }
    }
    if let Some(r) = t.r {
        if ring.length() != r {
            return Err(Failure::Usage(format!("{ring} has length {}, not {r}", ring.length())));
        }
    }
    Ok(ring)
}

fn parse_scheme(s: &str) -> Result<GroupScheme, Failure> {
    s.parse().map_err(|e: witt2rep::group::GroupError| Failure::Usage(e.to_string()))
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let (name, target) = match &cli.command {
        Command::Classes(t) => ("classes", t),
        Command::Degrees(t) => ("degrees", t),
        Command::Compare(t) => ("compare", t),
        Command::Verify(t) => ("verify", t),
    };
    let scheme = parse_scheme(&target.scheme)?;
    let (q, rings) = match &cli.command {
        Command::Compare(t) => {
            if t.ring.is_some() || t.r.is_some() {
                return Err(Failure::Usage("compare takes --q only; both length-two rings are built from it".into()));
            }
            let q = t.q.ok_or_else(|| Failure::Usage("compare needs --q".into()))?;
            let k = field(q)?;
            let rings = vec![LocalRing::truncated_poly(k.clone(), 2)?, LocalRing::mixed(k, 2)?];
            (Some(q), rings)
        }
        Command::Verify(t) if t.ring.is_none() => {
            let q = t.q.ok_or_else(|| Failure::Usage("verify needs --ring or --q".into()))?;
            (Some(q), vec![LocalRing::mixed(field(q)?, 2)?])
        }
        _ => {
            let ring = resolve_ring(target)?;
            (Some(ring.residue_field().order()), vec![ring])
        }
    };
    let exec = match cli.global.workers {
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    };
    let opts = AnalysisOptions { max_order: cli.global.max_order, seed: cli.global.seed, exec, ..AnalysisOptions::default() };
    let config = RunConfig {
        command: name.to_string(),
        scheme: scheme.to_string(),
        rings: rings.iter().map(|r| r.to_string()).collect(),
        q,
        max_order: opts.max_order,
        max_orbit_space: opts.max_orbit_space,
        max_classes: opts.max_classes,
        seed: opts.seed,
        cache_dir: cli.global.cache_dir.as_ref().map(|p| p.display().to_string()),
        out: cli.global.out.name().to_string(),
        version: CODE_VERSION.to_string(),
    };
    let cache = match &cli.global.cache_dir {
        Some(dir) => Some(Cache::new(dir).map_err(|e| Failure::Usage(format!("cache directory {}: {e}", dir.display())))?),
        None => None,
    };
    let config_key = serde_json::to_string(&config).expect("config serialises");
    if let Some(c) = &cache {
        if let Some(o) = c.load_report(&config_key).and_then(|text| serde_json::from_str::<Outcome>(&text).ok()) {
            return Ok(o);
        }
    }
    let ctx = Ctx { cli, config, opts, cache };
    let outcome = match &cli.command {
        Command::Classes(_) => classes(&ctx, scheme, rings[0].clone())?,
        Command::Degrees(_) => degrees(&ctx, scheme, rings[0].clone())?,
        Command::Compare(_) => compare(&ctx, scheme, q.expect("compare has q"))?,
        Command::Verify(_) => crate::verify::verify(&ctx, scheme, rings[0].clone())?,
    };
    if let Some(c) = &ctx.cache {
        let _ = c.store_report(&config_key, &serde_json::to_string(&outcome).expect("outcome serialises"));
    }
    Ok(outcome)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn classes(ctx: &Ctx, scheme: GroupScheme, ring: LocalRing) -> Result<Outcome, Failure> {
    let g = ctx.group(scheme, ring)?;
    let grp = g.group();
    let cls = grp.classes();
    let output = match ctx.out() {
        OutFormat::Json => {
            let rows: Vec<_> = (0..cls.len())
                .map(|i| {
                    json!({
                        "representative": grp.matrix(cls.reps[i]),
                        "size": cls.sizes[i],
                        "centralizer_order": cls.centralizer_orders[i],
                        "element_order": cls.element_orders[i],
                    })
                })
                .collect();
            pretty(&json!({
                "config": ctx.config_json(),
                "descriptor": g.descriptor(),
                "order": g.order(),
                "num_classes": cls.len(),
                "classes": rows,
            }))
        }
        OutFormat::Csv => {
            let mut s = String::from("class,size,centralizer_order,element_order\n");
            for i in 0..cls.len() {
                s.push_str(&format!("{i},{},{},{}\n", cls.sizes[i], cls.centralizer_orders[i], cls.element_orders[i]));
            }
            s
        }
        OutFormat::Text => {
            let mut s = format!("{}: order {}, {} conjugacy classes\n", g.descriptor(), g.order(), cls.len());
            s.push_str("class  size  centralizer  order  representative\n");
            for i in 0..cls.len() {
                s.push_str(&format!(
                    "{i:>5}  {:>4}  {:>11}  {:>5}  {:?}\n",
                    cls.sizes[i],
                    cls.centralizer_orders[i],
                    cls.element_orders[i],
                    grp.matrix(cls.reps[i])
                ));
            }
            s
        }
    };
    Ok(Outcome::ok(output))
}

fn degrees(ctx: &Ctx, scheme: GroupScheme, ring: LocalRing) -> Result<Outcome, Failure> {
    let g = ctx.group(scheme, ring)?;
    let t = ctx.table(&g)?;
    let m = t.degree_multiset();
    let output = match ctx.out() {
        OutFormat::Json => pretty(&json!({
            "config": ctx.config_json(),
            "descriptor": g.descriptor(),
            "order": g.order(),
            "num_classes": t.num_classes(),
            "split_prime": t.ell,
            "degree_multiset": m,
        })),
        OutFormat::Csv => m.to_csv(),
        OutFormat::Text => format!(
            "{}: order {}, {} irreducible characters (mod {}): {m}\n",
            g.descriptor(),
            g.order(),
            t.num_classes(),
            t.ell
        ),
    };
    Ok(Outcome::ok(output))
}

fn multiset_csv_rows(ring: &str, m: &DegreeMultiset, s: &mut String) {
    for (d, c) in &m.0 {
        s.push_str(&format!("{ring},{d},{c}\n"));
    }
}

fn compare(ctx: &Ctx, scheme: GroupScheme, q: u32) -> Result<Outcome, Failure> {
    let mut report: ComparisonReport = compare_rings_with(scheme, q, &ctx.opts, ctx.source())?;
    report.config = Some(ctx.config.clone());
    let v = &report.verdicts;
    let output = match ctx.out() {
        OutFormat::Json => pretty(&serde_json::to_value(&report).expect("report serialises")),
        OutFormat::Csv => {
            let mut s = String::from("ring,dimension,count\n");
            for r in &report.rings {
                multiset_csv_rows(&r.ring_descriptor, &r.degree_multiset, &mut s);
            }
            s
        }
        OutFormat::Text => {
            let mut s = format!("config: {}\n", serde_json::to_string(&ctx.config).expect("config"));
            s.push_str(&format!("{} over {}{}\n", report.scheme, report.field, if v.exploratory { " [EXPLORATORY]" } else { "" }));
            for r in &report.rings {
                s.push_str(&format!(
                    "  {}: order {}, {} classes, {} orbits\n    oracle   {}\n    clifford {}{}\n",
                    r.ring_descriptor,
                    r.order,
                    r.num_classes,
                    r.orbit_table.len(),
                    r.degree_multiset,
                    r.clifford_multiset,
                    if r.clifford_partial { " (partial)" } else { "" }
                ));
            }
            s.push_str(&format!(
                "verdicts: global_equal={} per_orbit_equal={} clifford_matches_oracle={} extension_all={} \
                 dim_formula_all={} stabilizer_formula_all={} n1_eq_n2_all={} n1_eq_n3_all={}\n",
                v.global_equal,
                v.per_orbit_equal,
                v.clifford_matches_oracle,
                v.extension_all,
                v.dim_formula_all,
                v.stabilizer_formula_all,
                v.counting_n1_eq_n2_all,
                v.counting_n1_eq_n3_all
            ));
            s
        }
    };
    let failure = if report.passes() { None } else { v.first_failure().map(str::to_string) };
    Ok(Outcome { output, exit_code: if failure.is_some() { 2 } else { 0 }, failure })
}

pub fn check_length_two(ring: &LocalRing) -> Result<(), Failure> {
    if ring.length() != 2 {
        return Err(Failure::Usage(format!("{ring} has length {}; verify needs a length-two ring", ring.length())));
    }
    Ok(())
}
