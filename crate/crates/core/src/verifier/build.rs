use std::path::PathBuf;
use std::str::FromStr;

use crate::abelian::{groups_of_order, normalize_factors, InvariantFactors};
use crate::constructions::{
    enumerate_group, ring_from_file, triangular_ring, zero_ring, Corpus, DedupMode,
    EnumerationOptions, Section, DEFAULT_BUDGET_BITS,
};
use crate::error::VerifyError;
use crate::ring::{direct_sum, FiniteRing};

/// A constructed ring named on the command line: `tri:p` or `zero:2x4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Triangular(u64),
    Zero(Vec<u64>),
}

impl RingSpec {
    pub fn build(&self) -> Result<FiniteRing, VerifyError> {
        Ok(match self {
            RingSpec::Triangular(p) => triangular_ring(*p)?,
            RingSpec::Zero(f) => {
                zero_ring(normalize_factors(f).map_err(crate::error::RingError::from)?)
            }
        })
    }

    fn label(&self) -> String {
        match self {
            RingSpec::Triangular(p) => format!("tri:{p}"),
            RingSpec::Zero(f) => format!(
                "zero:{}",
                f.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join("x")
            ),
        }
    }
}

impl FromStr for RingSpec {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        let bad =
            || VerifyError::Request(format!("bad ring spec {s:?}; expected tri:P or zero:AxB"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "tri" => Ok(RingSpec::Triangular(arg.parse().map_err(|_| bad())?)),
            "zero" if arg.is_empty() => Ok(RingSpec::Zero(Vec::new())),
            "zero" => Ok(RingSpec::Zero(
                arg.split('x')
                    .map(|d| d.parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?,
            )),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DedupChoice {
    /// On for orders up to 16.
    #[default]
    Auto,
    On,
    Off,
}

impl DedupChoice {
    fn resolve(self, order: u64) -> DedupMode {
        match self {
            DedupChoice::Auto => DedupMode::default_for(order),
            DedupChoice::On => DedupMode::AdditiveAutomorphism,
            DedupChoice::Off => DedupMode::None,
        }
    }
}

impl FromStr for DedupChoice {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        match s {
            "auto" => Ok(DedupChoice::Auto),
            "on" => Ok(DedupChoice::On),
            "off" => Ok(DedupChoice::Off),
            _ => Err(VerifyError::Request(format!(
                "dedup must be on, off or auto, got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusRequest {
    pub triangular: Vec<u64>,
    pub zero: Vec<Vec<u64>>,
    pub direct_sums: Vec<(RingSpec, RingSpec)>,
    pub files: Vec<PathBuf>,
    /// Orders whose every additive group is enumerated.
    pub enumerate_orders: Vec<u64>,
    pub enumerate_groups: Vec<Vec<u64>>,
    pub dedup: DedupChoice,
    pub workers: usize,
    pub budget_bits: u64,
}

impl Default for CorpusRequest {
    fn default() -> Self {
        CorpusRequest {
            triangular: Vec::new(),
            zero: Vec::new(),
            direct_sums: Vec::new(),
            files: Vec::new(),
            enumerate_orders: Vec::new(),
            enumerate_groups: Vec::new(),
            dedup: DedupChoice::Auto,
            workers: 1,
            budget_bits: DEFAULT_BUDGET_BITS,
        }
    }
}

/// Triangular rings for p in {2, 3, 5, 7}, two direct sums, and every ring
/// of order at most 8.
pub fn desk_request() -> CorpusRequest {
    CorpusRequest {
        triangular: vec![2, 3, 5, 7],
        direct_sums: vec![
            (RingSpec::Triangular(2), RingSpec::Zero(vec![3])),
            (RingSpec::Triangular(2), RingSpec::Triangular(3)),
        ],
        enumerate_orders: (1..=8).collect(),
        ..CorpusRequest::default()
    }
}

fn constructed(
    corpus: &mut Corpus,
    tag: &str,
    rings: Vec<(String, FiniteRing)>,
) -> Result<(), VerifyError> {
    if rings.is_empty() {
        return Ok(());
    }
    let section = Section {
        tag: tag.to_string(),
        group: None,
        complete: false,
        dedup: "off".into(),
        count: rings.len(),
    };
    corpus.push_section(section, rings)?;
    Ok(())
}

/// Builds a deterministic corpus: constructed families, then files, then
/// enumerations by increasing group order.
pub fn build_corpus(req: &CorpusRequest) -> Result<Corpus, VerifyError> {
    let mut corpus = Corpus::new();

    let tri = req
        .triangular
        .iter()
        .map(|&p| Ok((format!("constructed:triangular:{p}"), triangular_ring(p)?)))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    constructed(&mut corpus, "constructed:triangular", tri)?;

    let zero = req
        .zero
        .iter()
        .map(|f| {
            let spec = RingSpec::Zero(f.clone());
            Ok((format!("constructed:zero:{}", spec.label()), spec.build()?))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    constructed(&mut corpus, "constructed:zero", zero)?;

    let sums = req
        .direct_sums
        .iter()
        .map(|(a, b)| {
            let r = direct_sum(&a.build()?, &b.build()?)?;
            Ok((
                format!("constructed:direct-sum:{}+{}", a.label(), b.label()),
                r,
            ))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    constructed(&mut corpus, "constructed:direct-sum", sums)?;

    let files = req
        .files
        .iter()
        .map(|path| {
            let text = std::fs::read_to_string(path).map_err(crate::error::FileError::from)?;
            Ok((format!("file:{}", path.display()), ring_from_file(&text)?))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    constructed(&mut corpus, "file", files)?;

    let mut groups: Vec<InvariantFactors> = req
        .enumerate_orders
        .iter()
        .flat_map(|&n| groups_of_order(n))
        .collect();
    for f in &req.enumerate_groups {
        groups.push(normalize_factors(f).map_err(crate::error::RingError::from)?);
    }
    groups.sort_by(|a, b| (a.order(), a).cmp(&(b.order(), b)));
    groups.dedup();
    for g in groups {
        let dedup = req.dedup.resolve(g.order());
        let opts = EnumerationOptions {
            dedup,
            budget_bits: req.budget_bits,
            ..EnumerationOptions::default()
        };
        let rings = enumerate_group(&g, &opts, req.workers)?;
        let label: Vec<String> = g.factors().iter().map(|d| d.to_string()).collect();
        let tag = format!("enumerated:g={}", label.join(","));
        let section = Section {
            tag: tag.clone(),
            group: Some(g.clone()),
            complete: true,
            dedup: dedup.as_str().into(),
            count: rings.len(),
        };
        let tagged = rings
            .into_iter()
            .enumerate()
            .map(|(i, r)| (format!("{tag}:{i}"), r))
            .collect();
        corpus.push_section(section, tagged)?;
    }
    Ok(corpus)
}
