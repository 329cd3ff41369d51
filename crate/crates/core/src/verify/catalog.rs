//! The fixed catalog of check identifiers.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::families::FamilyId;
use crate::{Error, Result};

/// Orthogonality and biorthogonality audits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GramCase {
    ContinuousHermite,
    Chihara,
    AskeyWilson,
    CarlitzU,
    BigQJacobi,
    CarlitzVm,
    CarlitzVsigma,
    Szego,
    QInvHermite,
    ChiharaQinv,
    VermaM,
    VermaSigma,
    Pastro,
    IsmailMasson2,
    IsmailMasson4,
}

impl GramCase {
    pub const ALL: [GramCase; 15] = [
        GramCase::ContinuousHermite,
        GramCase::Chihara,
        GramCase::AskeyWilson,
        GramCase::CarlitzU,
        GramCase::BigQJacobi,
        GramCase::CarlitzVm,
        GramCase::CarlitzVsigma,
        GramCase::Szego,
        GramCase::QInvHermite,
        GramCase::ChiharaQinv,
        GramCase::VermaM,
        GramCase::VermaSigma,
        GramCase::Pastro,
        GramCase::IsmailMasson2,
        GramCase::IsmailMasson4,
    ];

    pub fn is_biorthogonal(self) -> bool {
        matches!(
            self,
            GramCase::VermaM
                | GramCase::VermaSigma
                | GramCase::Pastro
                | GramCase::IsmailMasson2
                | GramCase::IsmailMasson4
        )
    }

    fn tag(self) -> &'static str {
        match self {
            GramCase::ContinuousHermite => "CONTINUOUS_Q_HERMITE",
            GramCase::Chihara => "AL_SALAM_CHIHARA",
            GramCase::AskeyWilson => "ASKEY_WILSON",
            GramCase::CarlitzU => "AL_SALAM_CARLITZ_U",
            GramCase::BigQJacobi => "BIG_Q_JACOBI",
            GramCase::CarlitzVm => "AL_SALAM_CARLITZ_V_M",
            GramCase::CarlitzVsigma => "AL_SALAM_CARLITZ_V_SIGMA",
            GramCase::Szego => "SZEGO",
            GramCase::QInvHermite => "Q_INVERSE_HERMITE",
            GramCase::ChiharaQinv => "AL_SALAM_CHIHARA_QINV",
            GramCase::VermaM => "AL_SALAM_VERMA_M",
            GramCase::VermaSigma => "AL_SALAM_VERMA_SIGMA",
            GramCase::Pastro => "PASTRO",
            GramCase::IsmailMasson2 => "ISMAIL_MASSON_2",
            GramCase::IsmailMasson4 => "ISMAIL_MASSON_4",
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            GramCase::ContinuousHermite => "continuous q-Hermite orthogonality",
            GramCase::Chihara => "Al-Salam-Chihara orthogonality",
            GramCase::AskeyWilson => "Askey-Wilson orthogonality",
            GramCase::CarlitzU => "Al-Salam-Carlitz U orthogonality",
            GramCase::BigQJacobi => "big q-Jacobi orthogonality on the attached Carlitz measure",
            GramCase::CarlitzVm => "Al-Salam-Carlitz V orthogonality against m^(a)",
            GramCase::CarlitzVsigma => "Al-Salam-Carlitz V orthogonality against sigma^(a)",
            GramCase::Szego => "Szego circle orthogonality",
            GramCase::QInvHermite => "q^-1-Hermite orthogonality on the N-extremal measure",
            GramCase::ChiharaQinv => "u_n orthogonality against nu_mu",
            GramCase::VermaM => "Al-Salam-Verma biorthogonality, mu = m^(a)",
            GramCase::VermaSigma => "Al-Salam-Verma biorthogonality, mu = sigma^(a)",
            GramCase::Pastro => "Pastro biorthogonality on the circle",
            GramCase::IsmailMasson2 => "two-parameter rational biorthogonality",
            GramCase::IsmailMasson4 => "four-parameter rational biorthogonality",
        }
    }

    fn section(self) -> u8 {
        match self {
            GramCase::Szego => 1,
            GramCase::ContinuousHermite | GramCase::Chihara | GramCase::AskeyWilson => 2,
            GramCase::CarlitzU
            | GramCase::BigQJacobi
            | GramCase::CarlitzVm
            | GramCase::CarlitzVsigma
            | GramCase::VermaM
            | GramCase::VermaSigma => 3,
            GramCase::Pastro => 4,
            _ => 5,
        }
    }
}

/// Measures whose total mass and sign are audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureCase {
    HermiteWeight,
    ChiharaWeight,
    AskeyWilsonWeight,
    Carlitz,
    Vm,
    Vsigma,
    Vdensity,
    SzegoWeight,
    PastroWeight,
    NExtremal,
    NuMu,
}

impl MeasureCase {
    pub const ALL: [MeasureCase; 11] = [
        MeasureCase::HermiteWeight,
        MeasureCase::ChiharaWeight,
        MeasureCase::AskeyWilsonWeight,
        MeasureCase::Carlitz,
        MeasureCase::Vm,
        MeasureCase::Vsigma,
        MeasureCase::Vdensity,
        MeasureCase::SzegoWeight,
        MeasureCase::PastroWeight,
        MeasureCase::NExtremal,
        MeasureCase::NuMu,
    ];

    fn tag(self) -> &'static str {
        match self {
            MeasureCase::HermiteWeight => "HERMITE_WEIGHT",
            MeasureCase::ChiharaWeight => "AL_SALAM_CHIHARA_WEIGHT",
            MeasureCase::AskeyWilsonWeight => "ASKEY_WILSON_WEIGHT",
            MeasureCase::Carlitz => "CARLITZ",
            MeasureCase::Vm => "V_M",
            MeasureCase::Vsigma => "V_SIGMA",
            MeasureCase::Vdensity => "V_DENSITY",
            MeasureCase::SzegoWeight => "SZEGO_WEIGHT",
            MeasureCase::PastroWeight => "PASTRO_WEIGHT",
            MeasureCase::NExtremal => "N_EXTREMAL",
            MeasureCase::NuMu => "NU_MU",
        }
    }

    fn section(self) -> u8 {
        match self {
            MeasureCase::HermiteWeight | MeasureCase::ChiharaWeight | MeasureCase::AskeyWilsonWeight => 2,
            MeasureCase::Carlitz | MeasureCase::Vm | MeasureCase::Vsigma | MeasureCase::Vdensity => 3,
            MeasureCase::SzegoWeight | MeasureCase::PastroWeight => 4,
            MeasureCase::NExtremal | MeasureCase::NuMu => 5,
        }
    }
}

/// The families with a generating function check.
pub const GENFUN_FAMILIES: [FamilyId; 10] = [
    FamilyId::DiscreteQHermite,
    FamilyId::ContinuousQHermite,
    FamilyId::ASChihara,
    FamilyId::AskeyWilson,
    FamilyId::ASCarlitzU,
    FamilyId::ASCarlitzV,
    FamilyId::SzegoCircle,
    FamilyId::Pastro,
    FamilyId::QInvHermite,
    FamilyId::ASChiharaQinv,
];

/// The families with a radius-of-convergence check.
pub const RADIUS_FAMILIES: [FamilyId; 4] =
    [FamilyId::SzegoCircle, FamilyId::ASCarlitzV, FamilyId::ASCarlitzU, FamilyId::QInvHermite];

/// The polynomial families (those with a three-term recurrence).
pub const POLYNOMIAL_FAMILIES: [FamilyId; 11] = [
    FamilyId::ContinuousQHermite,
    FamilyId::DiscreteQHermite,
    FamilyId::QInvHermite,
    FamilyId::ASCarlitzU,
    FamilyId::ASCarlitzV,
    FamilyId::ASChihara,
    FamilyId::AskeyWilson,
    FamilyId::BigQJacobi,
    FamilyId::SzegoCircle,
    FamilyId::Pastro,
    FamilyId::ASChiharaQinv,
];

/// A catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    ChiharaIntegral,
    AskeyWilsonIntegral,
    AskeyWilsonPermutation,
    GenfunProductIntegral,
    CarlitzIntegral,
    CarlitzChuVandermonde,
    VDensityIntegral,
    RamanujanIntegral,
    ChiPairIntegral,
    ChiQuadrupleIntegral,
    ChiPairNuIntegral,
    QBinomial,
    QChuVandermonde,
    ChiharaSymmetry,
    QPfaffKummer,
    Sears,
    Euler,
    NonterminatingChuVandermonde,
    BigQJacobiSymmetry,
    QGauss,
    QMehler,
    QPochShift,
    Gram(GramCase),
    PrintedNormRatio,
    ZeroMean,
    Genfun(FamilyId),
    Radius(FamilyId),
    Representation(FamilyId),
    Mass(MeasureCase),
    Positivity(MeasureCase),
}

impl CheckId {
    /// Every check, in catalog order.
    pub fn all() -> Vec<CheckId> {
        use CheckId::*;
        let mut v = vec![
            ChiharaIntegral,
            AskeyWilsonIntegral,
            AskeyWilsonPermutation,
            GenfunProductIntegral,
            CarlitzIntegral,
            CarlitzChuVandermonde,
            VDensityIntegral,
            RamanujanIntegral,
            ChiPairIntegral,
            ChiQuadrupleIntegral,
            ChiPairNuIntegral,
            QBinomial,
            QChuVandermonde,
            ChiharaSymmetry,
            QPfaffKummer,
            Sears,
            Euler,
            NonterminatingChuVandermonde,
            BigQJacobiSymmetry,
            QGauss,
            QMehler,
            QPochShift,
        ];
        v.extend(GramCase::ALL.map(Gram));
        v.push(PrintedNormRatio);
        v.push(ZeroMean);
        v.extend(GENFUN_FAMILIES.map(Genfun));
        v.extend(RADIUS_FAMILIES.map(Radius));
        v.extend(POLYNOMIAL_FAMILIES.map(Representation));
        v.extend(MeasureCase::ALL.map(Mass));
        v.extend(MeasureCase::ALL.iter().filter(|m| **m != MeasureCase::PastroWeight).map(|m| Positivity(*m)));
        v
    }

    /// The report identifier.
    pub fn id(&self) -> String {
        use CheckId::*;
        match self {
            ChiharaIntegral => "INT_2_2".into(),
            AskeyWilsonIntegral => "INT_2_16".into(),
            AskeyWilsonPermutation => "INT_2_16_PERMUTATION".into(),
            GenfunProductIntegral => "INT_2_22".into(),
            CarlitzIntegral => "INT_3_6".into(),
            CarlitzChuVandermonde => "SUM_3_7".into(),
            VDensityIntegral => "INT_3_21".into(),
            RamanujanIntegral => "INT_4_2".into(),
            ChiPairIntegral => "INT_5_5".into(),
            ChiQuadrupleIntegral => "INT_5_10".into(),
            ChiPairNuIntegral => "INT_5_24".into(),
            QBinomial => "ID_2_3".into(),
            QChuVandermonde => "ID_2_7".into(),
            ChiharaSymmetry => "ID_2_11".into(),
            QPfaffKummer => "ID_2_14".into(),
            Sears => "ID_2_20".into(),
            Euler => "ID_3_5".into(),
            NonterminatingChuVandermonde => "ID_3_7".into(),
            BigQJacobiSymmetry => "ID_3_14".into(),
            QGauss => "ID_3_20".into(),
            QMehler => "ID_5_9".into(),
            QPochShift => "QPOCH_SHIFT".into(),
            Gram(g) => format!("{}_{}", if g.is_biorthogonal() { "BIORTH" } else { "ORTH" }, g.tag()),
            PrintedNormRatio => "ISMAIL_MASSON_4_PRINTED_NORM".into(),
            ZeroMean => "THM_5_2".into(),
            Genfun(f) => format!("GENFUN_{}", family_tag(*f)),
            Radius(f) => format!("RADIUS_{}", family_tag(*f)),
            Representation(f) => format!("REPR_{}", family_tag(*f)),
            Mass(m) => format!("MASS_{}", m.tag()),
            Positivity(m) => format!("POSITIVITY_{}", m.tag()),
        }
    }

    /// What the check confirms, as printed next to each record.
    pub fn equation_ref(&self) -> String {
        use CheckId::*;
        match self {
            ChiharaIntegral => "two-parameter q-beta integral 2pi/(q,t1t2;q)_inf".into(),
            AskeyWilsonIntegral => "Askey-Wilson q-beta integral".into(),
            AskeyWilsonPermutation => "Askey-Wilson integral symmetric in t1..t4".into(),
            GenfunProductIntegral => "integral of two generating-function products, 6phi5 closed form".into(),
            CarlitzIntegral => "integral of 1/(xt1,xt2;q)_inf against the Carlitz measure".into(),
            CarlitzChuVandermonde => "nonterminating Chu-Vandermonde sum from the Carlitz atoms".into(),
            VDensityIntegral => "integral of (xt1,xt2;q)_inf against the V-family density".into(),
            RamanujanIntegral => "Ramanujan q-beta integral".into(),
            ChiPairIntegral => "integral of chi_t1 chi_t2 = (-t1t2/q;q)_inf".into(),
            ChiQuadrupleIntegral => "integral of four chi functions".into(),
            ChiPairNuIntegral => "integral of chi_t3 chi_t4 against nu_mu(t1,t2)".into(),
            QBinomial => "q-binomial theorem".into(),
            QChuVandermonde => "q-Chu-Vandermonde sum".into(),
            ChiharaSymmetry => "Al-Salam-Chihara 3phi2 symmetric in t1, t2".into(),
            QPfaffKummer => "q-Pfaff-Kummer transformation".into(),
            Sears => "Sears transformation".into(),
            Euler => "Euler's theorem".into(),
            NonterminatingChuVandermonde => "nonterminating Chu-Vandermonde sum".into(),
            BigQJacobiSymmetry => "big q-Jacobi 3phi2 transformation".into(),
            QGauss => "q-Gauss sum".into(),
            QMehler => "q-Mehler formula".into(),
            QPochShift => "(a;q)_{n-k} shift and reflection".into(),
            Gram(g) => g.anchor().into(),
            PrintedNormRatio => "four-parameter rational norm: printed / measured = (-t1t2/q;q)_inf".into(),
            ZeroMean => "u_n has zero mean against nu_mu for n >= 1".into(),
            Genfun(f) => format!("{f} generating function"),
            Radius(f) => format!("{f} radius of sum sqrt(zeta_n)/c_n z^n"),
            Representation(f) => format!("{f} recurrence vs explicit form"),
            Mass(m) => format!("total mass of {}", m.tag().to_ascii_lowercase()),
            Positivity(m) => format!("nonnegativity of {}", m.tag().to_ascii_lowercase()),
        }
    }

    /// Grouping used by the suite selector.
    pub fn section(&self) -> u8 {
        use CheckId::*;
        match self {
            ChiharaIntegral
            | AskeyWilsonIntegral
            | AskeyWilsonPermutation
            | GenfunProductIntegral
            | QBinomial
            | QChuVandermonde
            | ChiharaSymmetry
            | QPfaffKummer
            | Sears
            | QPochShift => 2,
            CarlitzIntegral
            | CarlitzChuVandermonde
            | VDensityIntegral
            | Euler
            | NonterminatingChuVandermonde
            | BigQJacobiSymmetry
            | QGauss => 3,
            RamanujanIntegral => 4,
            ChiPairIntegral | ChiQuadrupleIntegral | ChiPairNuIntegral | QMehler | PrintedNormRatio | ZeroMean => 5,
            Gram(g) => g.section(),
            Genfun(f) => match f {
                FamilyId::DiscreteQHermite | FamilyId::ContinuousQHermite => 1,
                FamilyId::ASChihara | FamilyId::AskeyWilson => 2,
                FamilyId::ASCarlitzU | FamilyId::ASCarlitzV => 3,
                FamilyId::SzegoCircle | FamilyId::Pastro => 4,
                _ => 5,
            },
            Radius(_) | Representation(_) => 1,
            Mass(m) | Positivity(m) => m.section(),
        }
    }

    /// Default pass tolerance.
    pub fn default_tolerance(&self) -> f64 {
        use CheckId::*;
        match self {
            QChuVandermonde | Sears => 1e-11,
            AskeyWilsonPermutation => 1e-10,
            QPochShift => 1e-12,
            ZeroMean | Mass(_) | Representation(_) => 1e-9,
            Radius(_) => 0.07,
            Positivity(_) => 1e-12,
            _ => 1e-8,
        }
    }
}

fn family_tag(f: FamilyId) -> String {
    f.name().to_ascii_uppercase().replace('-', "_")
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase();
        CheckId::all().into_iter().find(|c| c.id() == key).ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.id())
    }
}
