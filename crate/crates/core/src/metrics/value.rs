//! Value of information `V(ρ ⊗ γ_O, Λ, Q) = Tr[Λ(ρ ⊗ γ_O) Q]` and the
//! orderings it induces on signals and channels.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{chaos_degree_quantum, ComplexityConfig};
use crate::channel::{Channel, ChannelDescriptor};
use crate::error::{Error, Result};
use crate::hilbert::{self, random, DensityOperator, Operator, HERMITIAN_TOL};

/// Values closer than this compare as equal.
pub const TIE_TOL: f64 = 1e-12;
/// Largest imaginary part of `V` that is silently discarded.
pub const IMAGINARY_TOL: f64 = 1e-10;

/// A self-adjoint purpose operator `Q` on the output space.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueQuery {
    q: Operator,
}

impl ValueQuery {
    pub fn new(q: Operator) -> Result<Self> {
        let defect = hilbert::hermiticity_defect(&q);
        if defect > HERMITIAN_TOL {
            return Err(Error::NotSelfAdjoint(defect));
        }
        Ok(Self { q })
    }

    pub fn operator(&self) -> &Operator {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.nrows()
    }
}

/// `V = Tr[Λ(ρ_P ⊗ γ_O) Q]`.
pub fn value_of_information(
    rho: &DensityOperator,
    gamma: &DensityOperator,
    channel: &Channel,
    query: &ValueQuery,
) -> Result<f64> {
    let joint = rho.tensor(gamma)?;
    if channel.input_dim() != joint.dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.input_dim(),
            found: joint.dim(),
        });
    }
    let out = if channel.is_linear() {
        channel.apply_linear(joint.matrix())?
    } else {
        channel.apply(&joint)?.into_matrix()
    };
    if query.dim() != out.nrows() {
        return Err(Error::DimensionMismatch {
            expected: out.nrows(),
            found: query.dim(),
        });
    }
    let v = (out * query.operator()).trace();
    if v.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue(v.im));
    }
    Ok(v.re)
}

/// Which of two arguments is the more valuable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    First,
    Second,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub first: f64,
    pub second: f64,
    pub preferred: Preference,
}

impl Comparison {
    fn of(first: f64, second: f64) -> Self {
        let preferred = if (first - second).abs() <= TIE_TOL {
            Preference::Tie
        } else if first > second {
            Preference::First
        } else {
            Preference::Second
        };
        Self {
            first,
            second,
            preferred,
        }
    }
}

/// Compares two signals `ρ`, `ρ'` for a fixed channel and purpose.
pub fn compare_signals(
    rho: &DensityOperator,
    rho_prime: &DensityOperator,
    gamma: &DensityOperator,
    channel: &Channel,
    query: &ValueQuery,
) -> Result<Comparison> {
    Ok(Comparison::of(
        value_of_information(rho, gamma, channel, query)?,
        value_of_information(rho_prime, gamma, channel, query)?,
    ))
}

/// Compares two channels `Λ`, `Λ'` for a fixed signal and purpose.
pub fn compare_channels(
    rho: &DensityOperator,
    gamma: &DensityOperator,
    channel: &Channel,
    channel_prime: &Channel,
    query: &ValueQuery,
) -> Result<Comparison> {
    Ok(Comparison::of(
        value_of_information(rho, gamma, channel, query)?,
        value_of_information(rho, gamma, channel_prime, query)?,
    ))
}

/// One instance of the chaos-degree versus value ordering experiment.
#[derive(Debug, Clone)]
pub struct ConjectureInstance {
    pub rho: DensityOperator,
    pub gamma: DensityOperator,
    pub channel: Channel,
    pub channel_prime: Channel,
    pub query: ValueQuery,
}

/// `agree` records whether `D ≤ D'` holds exactly when `V ≥ V'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjectureRow {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "D_prime")]
    pub d_prime: f64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "V_prime")]
    pub v_prime: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureSummary {
    pub rows: Vec<ConjectureRow>,
    pub agreement_rate: f64,
}

/// Evaluates `D(ρ ⊗ γ; Λ)`, `D(ρ ⊗ γ; Λ')` and the two values. The outcome
/// is informational; nothing here asserts the ordering.
pub fn conjecture_experiment(
    instance: &ConjectureInstance,
    cfg: &ComplexityConfig,
) -> Result<ConjectureRow> {
    let joint = instance.rho.tensor(&instance.gamma)?;
    let d = chaos_degree_quantum(&joint, &instance.channel, cfg)?.chaos_degree;
    let d_prime = chaos_degree_quantum(&joint, &instance.channel_prime, cfg)?.chaos_degree;
    let v = value_of_information(&instance.rho, &instance.gamma, &instance.channel, &instance.query)?;
    let v_prime = value_of_information(
        &instance.rho,
        &instance.gamma,
        &instance.channel_prime,
        &instance.query,
    )?;
    let less_chaotic = d <= d_prime + TIE_TOL;
    let more_valuable = v >= v_prime - TIE_TOL;
    Ok(ConjectureRow {
        d,
        d_prime,
        v,
        v_prime,
        agree: less_chaotic == more_valuable,
    })
}

pub fn conjecture_batch(
    instances: &[ConjectureInstance],
    cfg: &ComplexityConfig,
) -> Result<ConjectureSummary> {
    let rows = instances
        .iter()
        .map(|inst| conjecture_experiment(inst, cfg))
        .collect::<Result<Vec<_>>>()?;
    let agreement_rate = if rows.is_empty() {
        0.0
    } else {
        rows.iter().filter(|r| r.agree).count() as f64 / rows.len() as f64
    };
    Ok(ConjectureSummary {
        rows,
        agreement_rate,
    })
}

/// JSON form of a [`ConjectureInstance`]; `rho` lives on the signal space,
/// `gamma` on the observer space, channels and `query` on their product.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjectureInstanceSpec {
    #[serde(with = "crate::hilbert::json::matrix")]
    pub rho: Operator,
    #[serde(with = "crate::hilbert::json::matrix")]
    pub gamma: Operator,
    pub channel: ChannelDescriptor,
    pub channel_prime: ChannelDescriptor,
    #[serde(with = "crate::hilbert::json::matrix")]
    pub query: Operator,
}

impl ConjectureInstanceSpec {
    pub fn build(&self) -> Result<ConjectureInstance> {
        Ok(ConjectureInstance {
            rho: DensityOperator::new(self.rho.clone())?,
            gamma: DensityOperator::new(self.gamma.clone())?,
            channel: self.channel.build()?,
            channel_prime: self.channel_prime.build()?,
            query: ValueQuery::new(self.query.clone())?,
        })
    }
}

/// Batch file `{"instances": [...]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjectureBatchSpec {
    pub instances: Vec<ConjectureInstanceSpec>,
}

impl ConjectureBatchSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<Vec<ConjectureInstance>> {
        self.instances.iter().map(ConjectureInstanceSpec::build).collect()
    }
}

/// Random instance on `C^{dim_p} ⊗ C^{dim_o}`: random states, two random
/// Kraus channels with different Kraus ranks and `Q` a random rank-one
/// projection.
pub fn random_conjecture_instance<R: Rng + ?Sized>(
    dim_p: usize,
    dim_o: usize,
    rng: &mut R,
) -> ConjectureInstance {
    let n = dim_p * dim_o;
    let rank = rng.random_range(1..=n);
    let rank_prime = rng.random_range(1..=n);
    let psi = random::random_unit_vector(n, rng);
    ConjectureInstance {
        rho: random::random_density(dim_p, rng),
        gamma: random::random_density(dim_o, rng),
        channel: Channel::random_kraus(n, rank, rng),
        channel_prime: Channel::random_kraus(n, rank_prime, rng),
        query: ValueQuery::new(hilbert::ket_bra(&psi, &psi)).expect("projection is self-adjoint"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{basis_vector, tensor_vec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_cfg() -> ComplexityConfig {
        ComplexityConfig {
            restarts: 50,
            ..ComplexityConfig::default()
        }
    }

    #[test]
    fn value_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random::random_density(2, &mut rng);
        let gamma = random::random_density(3, &mut rng);
        let ch = Channel::random_kraus(6, 3, &mut rng);
        let id_q = ValueQuery::new(Operator::identity(6, 6)).unwrap();
        assert!((value_of_information(&rho, &gamma, &ch, &id_q).unwrap() - 1.0).abs() < 1e-12);
        let zero_q = ValueQuery::new(Operator::zeros(6, 6)).unwrap();
        assert_eq!(value_of_information(&rho, &gamma, &ch, &zero_q).unwrap(), 0.0);

        let f = basis_vector(2, 1);
        let g = random::random_unit_vector(3, &mut rng);
        let pure_f = DensityOperator::pure(&f).unwrap();
        let pure_g = DensityOperator::pure(&g).unwrap();
        let fg = tensor_vec(&f, &g);
        let proj = ValueQuery::new(hilbert::ket_bra(&fg, &fg)).unwrap();
        let v = value_of_information(&pure_f, &pure_g, &Channel::identity(6), &proj).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn value_is_linear_in_query() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random::random_density(2, &mut rng);
        let gamma = random::random_density(2, &mut rng);
        let ch = Channel::random_kraus(4, 2, &mut rng);
        let a = random::random_hermitian(4, &mut rng);
        let b = random::random_hermitian(4, &mut rng);
        let va = value_of_information(&rho, &gamma, &ch, &ValueQuery::new(a.clone()).unwrap()).unwrap();
        let vb = value_of_information(&rho, &gamma, &ch, &ValueQuery::new(b.clone()).unwrap()).unwrap();
        let combo = ValueQuery::new(a.scale(2.0) + b.scale(-0.5)).unwrap();
        let vc = value_of_information(&rho, &gamma, &ch, &combo).unwrap();
        assert!((vc - (2.0 * va - 0.5 * vb)).abs() < 1e-10);
    }

    #[test]
    fn value_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random::random_density(2, &mut rng);
        let gamma = random::random_density(2, &mut rng);
        let not_sa = Operator::from_fn(4, 4, |r, c| hilbert::C64::new(0.0, (r as f64) - 2.0 * c as f64));
        assert!(matches!(ValueQuery::new(not_sa), Err(Error::NotSelfAdjoint(_))));
        let q = ValueQuery::new(Operator::identity(4, 4)).unwrap();
        assert!(matches!(
            value_of_information(&rho, &gamma, &Channel::identity(3), &q),
            Err(Error::DimensionMismatch { .. })
        ));
        let q3 = ValueQuery::new(Operator::identity(3, 3)).unwrap();
        assert!(value_of_information(&rho, &gamma, &Channel::identity(4), &q3).is_err());
    }

    #[test]
    fn comparisons() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = random::random_density(2, &mut rng);
        let gamma = random::random_density(2, &mut rng);
        let ch = Channel::random_kraus(4, 2, &mut rng);
        let ch2 = Channel::random_kraus(4, 3, &mut rng);
        let q = ValueQuery::new(random::random_hermitian(4, &mut rng)).unwrap();
        let same = compare_signals(&rho, &rho, &gamma, &ch, &q).unwrap();
        assert_eq!(same.preferred, Preference::Tie);
        let id_q = ValueQuery::new(Operator::identity(4, 4)).unwrap();
        assert_eq!(
            compare_channels(&rho, &gamma, &ch, &ch2, &id_q).unwrap().preferred,
            Preference::Tie
        );
        for _ in 0..20 {
            let r2 = random::random_density(2, &mut rng);
            let c = compare_signals(&rho, &r2, &gamma, &ch, &q).unwrap();
            let v1 = value_of_information(&rho, &gamma, &ch, &q).unwrap();
            let v2 = value_of_information(&r2, &gamma, &ch, &q).unwrap();
            let expected = if v1 > v2 { Preference::First } else { Preference::Second };
            assert_eq!(c.preferred, expected);
            let cc = compare_channels(&rho, &gamma, &ch, &ch2, &q).unwrap();
            let w2 = value_of_information(&rho, &gamma, &ch2, &q).unwrap();
            assert_eq!(cc.first, v1);
            assert_eq!(cc.second, w2);
        }
    }

    #[test]
    fn conjecture_same_channel_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut inst = random_conjecture_instance(2, 2, &mut rng);
        inst.channel_prime = inst.channel.clone();
        let row = conjecture_experiment(&inst, &small_cfg()).unwrap();
        assert!(row.agree);
        assert_eq!(row.d, row.d_prime);
        assert_eq!(row.v, row.v_prime);
    }

    #[test]
    fn conjecture_identity_versus_depolarizing() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rho = random::random_pure(2, &mut rng);
        let gamma = random::random_pure(2, &mut rng);
        let joint = rho.tensor(&gamma).unwrap();
        let inst = ConjectureInstance {
            rho,
            gamma,
            channel: Channel::identity(4),
            channel_prime: Channel::completely_depolarizing(4),
            query: ValueQuery::new(joint.matrix().clone()).unwrap(),
        };
        let row = conjecture_experiment(&inst, &small_cfg()).unwrap();
        assert!(row.d.abs() < 1e-12);
        assert!((row.d_prime - 4f64.ln()).abs() < 1e-9);
        // projection onto the undisturbed image: V = 1 versus 1/4
        assert!((row.v - 1.0).abs() < 1e-12);
        assert!((row.v_prime - 0.25).abs() < 1e-12);
        assert!(row.agree);
    }

    #[test]
    fn batch_rate_in_unit_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let batch: Vec<_> = (0..10).map(|_| random_conjecture_instance(2, 2, &mut rng)).collect();
        let s = conjecture_batch(&batch, &small_cfg()).unwrap();
        assert_eq!(s.rows.len(), 10);
        assert!((0.0..=1.0).contains(&s.agreement_rate));
    }

    #[test]
    fn batch_file_with_equal_channels_always_agrees() {
        let text = r#"{"instances": [{
            "rho": [[0.7, 0], [0, 0.3]],
            "gamma": [[1]],
            "channel": {"kind": "depolarizing", "n": 2},
            "channel_prime": {"kind": "depolarizing", "n": 2},
            "query": [[1, 0], [0, 0]]
        }, {
            "rho": [[0.5, 0], [0, 0.5]],
            "gamma": [[1]],
            "channel": {"kind": "identity", "n": 2},
            "channel_prime": {"kind": "identity", "n": 2},
            "query": [[0, 0], [0, 1]]
        }]}"#;
        let batch = ConjectureBatchSpec::from_json(text).unwrap().build().unwrap();
        let summary = conjecture_batch(&batch, &small_cfg()).unwrap();
        assert_eq!(summary.rows.len(), 2);
        assert_eq!(summary.agreement_rate, 1.0);
        assert!(ConjectureBatchSpec::from_json(r#"{"instances": [], "x": 1}"#).is_err());
    }
}
