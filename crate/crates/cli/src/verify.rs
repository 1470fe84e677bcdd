//! Count regression suite behind `transys verify`.

use std::sync::Arc;

use clap::ValueEnum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use transys::characteristic::{count_interior_operators, fiber_decomposition};
use transys::functorial::{check_functoriality, intermediate_closure_example, random_meet_preserving_map};
use transys::fusion::{
    bmt_decompose, catalan, count_tr_chain_fusion, count_tr_fusion, tr_iterated_fusion_closed_form, tr_rank_two,
};
use transys::matchstick::{cover_to_system, enumerate_covers_with, system_to_cover};
use transys::transfer::enumerate_systems;
use transys::{oracle, Error, Lattice, Limits, SearchOptions, TrLattice};

/// Interior operators on `[1]^k` for `k = 0..=5`.
const INTERIOR_ON_CUBES: [u64; 6] = [1, 2, 7, 61, 2480, 1385552];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    All,
    Catalan,
    RankTwo,
    A102896,
    Matchstick,
    Fibers,
    Fusion,
    Bmt,
    Bijection,
    Functoriality,
    Oracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy)]
pub struct Config {
    pub max: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
    pub limits: Limits,
}

/// Checks outside the guards are errors, not mismatches.
type Step = Result<Result<String, String>, Error>;

fn lattice(l: Result<Lattice, Error>) -> Result<Arc<Lattice>, Error> {
    l.map(Arc::new)
}

fn fuse2(n: usize) -> Result<Arc<Lattice>, Error> {
    lattice(Lattice::iterated_fusion(&Lattice::chain(2)?, n))
}

fn modular_family() -> Result<Vec<(String, Arc<Lattice>)>, Error> {
    let mut out = Vec::new();
    for n in 0..=4 {
        out.push((format!("[{n}]"), lattice(Lattice::chain(n))?));
    }
    for k in 0..=3 {
        out.push((format!("[1]^{k}"), lattice(Lattice::boolean_cube(k))?));
    }
    for n in 2..=4 {
        out.push((format!("[2]^*{n}"), fuse2(n)?));
    }
    out.push(("[2]x[3]".into(), lattice(Lattice::rectangle(2, 3))?));
    Ok(out)
}

fn count(l: &Arc<Lattice>, saturated: bool, cfg: &Config) -> Result<usize, Error> {
    Ok(enumerate_systems(l, SearchOptions { saturated, jobs: cfg.jobs }, &cfg.limits)?.len())
}

fn catalan_check(cfg: &Config) -> Step {
    let max = cfg.max.unwrap_or(5);
    let mut got = Vec::new();
    for n in 0..=max {
        let c = count(&lattice(Lattice::chain_with(n, &cfg.limits))?, false, cfg)?;
        if catalan(n as u64 + 1) != c.into() {
            return Ok(Err(format!("|Tr([{n}])| = {c}, expected {}", catalan(n as u64 + 1))));
        }
        got.push(c);
    }
    Ok(Ok(format!("|Tr([n])| = {got:?} for n = 0..={max}")))
}

fn rank_two_check(cfg: &Config) -> Step {
    let max = cfg.max.unwrap_or(5);
    let mut got = Vec::new();
    for n in 1..=max {
        let c = count(&fuse2(n)?, false, cfg)?;
        if tr_iterated_fusion_closed_form(n as u64) != c.into() {
            return Ok(Err(format!("|Tr([2]^*{n})| = {c}, closed form {}", tr_iterated_fusion_closed_form(n as u64))));
        }
        got.push(c);
    }
    for p in [2u64, 3, 5] {
        let c = count(&lattice(Lattice::sub_cp_cp(p))?, false, cfg)?;
        if tr_rank_two(p)? != c.into() {
            return Ok(Err(format!("p = {p}: enumeration {c}, closed form {}", tr_rank_two(p)?)));
        }
    }
    Ok(Ok(format!("|Tr([2]^*n)| = {got:?}; p = 2, 3, 5 agree with the closed form")))
}

fn interior_check(cfg: &Config) -> Step {
    let max = cfg.max.unwrap_or(4);
    if max >= INTERIOR_ON_CUBES.len() {
        return Err(Error::SizeLimit {
            what: "interior-count check dimension",
            actual: max,
            limit: INTERIOR_ON_CUBES.len() - 1,
        });
    }
    let mut got = Vec::new();
    for (k, &want) in INTERIOR_ON_CUBES.iter().enumerate().take(max + 1) {
        let c = count_interior_operators(&Lattice::boolean_cube_with(k, &cfg.limits)?)?;
        if c != want {
            return Ok(Err(format!("[1]^{k}: {c}, expected {want}")));
        }
        got.push(c);
    }
    Ok(Ok(format!("{got:?}")))
}

fn matchstick_check(cfg: &Config) -> Step {
    let cube = enumerate_covers_with(&lattice(Lattice::boolean_cube(3))?, &cfg.limits)?.len();
    let fused = enumerate_covers_with(&fuse2(3)?, &cfg.limits)?.len();
    if (cube, fused) != (61, 12) {
        return Ok(Err(format!("covers: [1]^3 has {cube}, [2]^*3 has {fused}")));
    }
    let family = modular_family()?;
    for (name, l) in &family {
        let covers = enumerate_covers_with(l, &cfg.limits)?.len();
        let saturated = count(l, true, cfg)?;
        let interior = count_interior_operators(l)? as usize;
        if covers != saturated || covers != interior {
            return Ok(Err(format!("{name}: {covers} covers, {saturated} saturated, {interior} interior")));
        }
    }
    Ok(Ok(format!("61 and 12 covers; three counts agree on {} lattices", family.len())))
}

fn fibers_check(_: &Config) -> Step {
    // full enumeration of every member, so no [2]x[3]
    let mut family: Vec<_> = modular_family()?.into_iter().filter(|(_, l)| l.len() <= 8).collect();
    family.push(("N5".into(), Arc::new(Lattice::pentagon())));
    family.push(("[2]x[1]".into(), lattice(Lattice::rectangle(2, 1))?));
    let mut fibers = 0;
    for (_, l) in &family {
        fibers += fiber_decomposition(l)?.len();
    }
    Ok(Ok(format!("{fibers} fibers over {} lattices are intervals", family.len())))
}

fn fusion_check(_: &Config) -> Step {
    let pool = [
        lattice(Lattice::chain(0))?,
        lattice(Lattice::chain(1))?,
        lattice(Lattice::chain(2))?,
        lattice(Lattice::boolean_cube(2))?,
        Arc::new(Lattice::pentagon()),
    ];
    for p in &pool {
        for q in &pool {
            let formula = count_tr_fusion(p, q)?.total;
            let direct = TrLattice::enumerate_all(&lattice(Lattice::fusion(p, q))?)?.len() as u64;
            if formula != direct {
                return Ok(Err(format!("{} * {} elements: recursion {formula}, direct {direct}", p.len(), q.len())));
            }
        }
    }
    for m in 0..=4 {
        for n in 0..=4 {
            let l = lattice(Lattice::fusion(&Lattice::chain(m)?, &Lattice::chain(n)?))?;
            let direct = TrLattice::enumerate_all(&l)?.len();
            if count_tr_chain_fusion(m as u64, n as u64) != direct.into() {
                return Ok(Err(format!("[{m}]*[{n}]: direct {direct}")));
            }
        }
    }
    Ok(Ok("25 operand pairs and 25 chain pairs agree".into()))
}

fn bmt_check(cfg: &Config) -> Step {
    let max = cfg.max.unwrap_or(4);
    for n in 1..=max {
        let d = bmt_decompose(n)?;
        if (d.b_len(), d.m_len(), d.t_len()) != (1 << n, n, 1 << n) {
            return Ok(Err(format!("n = {n}: blocks {} / {} / {}", d.b_len(), d.m_len(), d.t_len())));
        }
    }
    Ok(Ok(format!("bottom cube, middle antichain, top cube for n = 1..={max}")))
}

fn bijection_check(cfg: &Config) -> Step {
    let mut trips = 0;
    for (name, l) in modular_family()? {
        for r in enumerate_systems(&l, SearchOptions { saturated: true, jobs: cfg.jobs }, &cfg.limits)? {
            if cover_to_system(&system_to_cover(&r)?) != r {
                return Ok(Err(format!("{name}: {r} does not round-trip")));
            }
            trips += 1;
        }
        for q in enumerate_covers_with(&l, &cfg.limits)? {
            if system_to_cover(&cover_to_system(&q))? != q {
                return Ok(Err(format!("{name}: cover {:?} does not round-trip", q.edges())));
            }
            trips += 1;
        }
    }
    Ok(Ok(format!("{trips} round trips")))
}

fn functoriality_check(cfg: &Config) -> Step {
    let (f, g, r) = intermediate_closure_example();
    let report = check_functoriality(&f, &g, std::slice::from_ref(&r))?;
    let Some(d) = report.discrepancies.first() else {
        return Ok(Err("the two-step example shows no discrepancy".into()));
    };
    if !(d.composite.le(&d.stepwise) && d.composite != d.stepwise) {
        return Ok(Err(format!("expected {} ⊊ {}", d.composite, d.stepwise)));
    }
    let pool = [
        lattice(Lattice::chain(1))?,
        lattice(Lattice::chain(2))?,
        lattice(Lattice::boolean_cube(2))?,
        fuse2(3)?,
        Arc::new(Lattice::pentagon()),
    ];
    let samples: Vec<_> = pool
        .iter()
        .map(|l| TrLattice::enumerate_all(l).map(|t| t.systems().to_vec()))
        .collect::<Result<_, _>>()?;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let want = cfg.max.unwrap_or(100);
    let (mut pairs, mut draws) = (0, 0);
    while pairs < want && draws < 100 * want + 1000 {
        draws += 1;
        let (a, b, c) = (rng.random_range(0..pool.len()), rng.random_range(0..pool.len()), rng.random_range(0..pool.len()));
        let (Some(f), Some(g)) = (
            random_meet_preserving_map(&pool[a], &pool[b], &mut rng, 50),
            random_meet_preserving_map(&pool[b], &pool[c], &mut rng, 50),
        ) else {
            continue;
        };
        if !check_functoriality(&f, &g, &samples[a])?.holds() {
            return Ok(Err(format!("meet-preserving pair {:?} then {:?} disagrees", f.image(), g.image())));
        }
        pairs += 1;
    }
    Ok(Ok(format!("two-step example strict; {pairs} meet-preserving pairs agree (seed {})", cfg.seed)))
}

fn oracle_check(cfg: &Config) -> Step {
    let mut family = modular_family()?;
    family.push(("N5".into(), Arc::new(Lattice::pentagon())));
    let mut checked = 0;
    for (name, l) in family.iter().filter(|(_, l)| l.poset().strict_pair_count() <= 12) {
        let fast: Vec<_> = enumerate_systems(l, SearchOptions { saturated: false, jobs: cfg.jobs }, &cfg.limits)?
            .into_iter()
            .map(|s| s.bits().clone())
            .collect();
        let mut slow = oracle::transfer_systems(l.poset(), false);
        slow.sort();
        let mut fast_sorted = fast.clone();
        fast_sorted.sort();
        if fast_sorted != slow {
            return Ok(Err(format!("{name}: {} fast vs {} naive", fast.len(), slow.len())));
        }
        checked += 1;
    }
    Ok(Ok(format!("fast and naive enumerations agree on {checked} lattices")))
}

type Entry = (CheckName, &'static str, fn(&Config) -> Step);

const ALL: [Entry; 10] = [
    (CheckName::Catalan, "catalan", catalan_check),
    (CheckName::RankTwo, "rank-two", rank_two_check),
    (CheckName::A102896, "a102896", interior_check),
    (CheckName::Matchstick, "matchstick", matchstick_check),
    (CheckName::Fibers, "fibers", fibers_check),
    (CheckName::Fusion, "fusion", fusion_check),
    (CheckName::Bmt, "bmt", bmt_check),
    (CheckName::Bijection, "bijection", bijection_check),
    (CheckName::Functoriality, "functoriality", functoriality_check),
    (CheckName::Oracle, "oracle", oracle_check),
];

/// Runs the selected checks. `--max` applies only to a single named check.
pub fn run(which: CheckName, cfg: &Config) -> Result<Vec<Outcome>, Error> {
    let mut out = Vec::new();
    for (name, label, check) in ALL {
        if which != CheckName::All && which != name {
            continue;
        }
        let default_cfg = Config { max: None, ..*cfg };
        let cfg = if which == CheckName::All { &default_cfg } else { cfg };
        let (pass, detail) = match check(cfg)? {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        out.push(Outcome {
            check: label.into(),
            pass,
            detail,
        });
    }
    Ok(out)
}
