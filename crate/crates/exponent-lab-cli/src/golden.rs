//! Golden fixtures: the source tables embedded verbatim. Never recomputed
//! at build time; the workbench diffs its own output against these rows.

/// One row of an exponent table: `n`, exact `p_n`, `q_n`, and the printed
/// six-decimal exponent (blank on `q_n = 1` rows).
#[derive(Clone, Copy, Debug)]
pub struct GoldenMuRow {
    pub n: usize,
    pub p: &'static str,
    pub q: &'static str,
    pub mu: Option<&'static str>,
}

/// Historical upper-bound row: printed bound, attribution, year.
#[derive(Clone, Copy, Debug)]
pub struct GoldenHistoryRow {
    pub bound: &'static str,
    pub reference: &'static str,
    pub year: u16,
}


/// Exponent table for pi^2 (30 rows).
pub const MU_PI2: &[GoldenMuRow] = &[
    GoldenMuRow { n: 1, p: "9", q: "1", mu: None },
    GoldenMuRow { n: 2, p: "10", q: "1", mu: None },
    GoldenMuRow { n: 3, p: "69", q: "7", mu: Some("2.253500") },
    GoldenMuRow { n: 4, p: "79", q: "8", mu: Some("2.511334") },
    GoldenMuRow { n: 5, p: "227", q: "23", mu: Some("3.236253") },
    GoldenMuRow { n: 6, p: "10748", q: "1089", mu: Some("2.018434") },
    GoldenMuRow { n: 7, p: "10975", q: "1112", mu: Some("2.321958") },
    GoldenMuRow { n: 8, p: "98548", q: "9985", mu: Some("2.064841") },
    GoldenMuRow { n: 9, p: "109523", q: "11097", mu: Some("2.090224") },
    GoldenMuRow { n: 10, p: "208071", q: "21082", mu: Some("2.107694") },
    GoldenMuRow { n: 11, p: "525665", q: "53261", mu: Some("2.098602") },
    GoldenMuRow { n: 12, p: "1259401", q: "127604", mu: Some("2.071191") },
    GoldenMuRow { n: 13, p: "1785066", q: "180865", mu: Some("2.049770") },
    GoldenMuRow { n: 14, p: "3044467", q: "308469", mu: Some("2.172439") },
    GoldenMuRow { n: 15, p: "26140802", q: "2648617", mu: Some("2.094189") },
    GoldenMuRow { n: 16, p: "81466873", q: "8254320", mu: Some("2.021982") },
    GoldenMuRow { n: 17, p: "107607675", q: "10902937", mu: Some("2.147582") },
    GoldenMuRow { n: 18, p: "1157543623", q: "117283690", mu: Some("2.095357") },
    GoldenMuRow { n: 19, p: "5895325790", q: "597321387", mu: Some("2.018903") },
    GoldenMuRow { n: 20, p: "7052869413", q: "714605077", mu: Some("2.074380") },
    GoldenMuRow { n: 21, p: "27053934029", q: "2741136618", mu: Some("2.023038") },
    GoldenMuRow { n: 22, p: "34106803442", q: "3455741695", mu: Some("2.055226") },
    GoldenMuRow { n: 23, p: "95267540913", q: "9652620008", mu: Some("2.032519") },
    GoldenMuRow { n: 24, p: "129374344355", q: "13108361703", mu: Some("2.031079") },
    GoldenMuRow { n: 25, p: "224641885268", q: "22760981711", mu: Some("2.054176") },
    GoldenMuRow { n: 26, p: "803300000159", q: "81391306836", mu: Some("2.110031") },
    GoldenMuRow { n: 27, p: "12274141887653", q: "1243630584251", mu: Some("2.020459") },
    GoldenMuRow { n: 28, p: "13077441887812", q: "1325021891087", mu: Some("2.030798") },
    GoldenMuRow { n: 29, p: "25351583775465", q: "2568652475338", mu: Some("2.036971") },
    GoldenMuRow { n: 30, p: "63780609438742", q: "6462326841763", mu: Some("2.039154") },
];

/// Exponent table for pi^3 (30 rows).
pub const MU_PI3: &[GoldenMuRow] = &[
    GoldenMuRow { n: 1, p: "31", q: "1", mu: None },
    GoldenMuRow { n: 2, p: "4930", q: "159", mu: Some("2.225255") },
    GoldenMuRow { n: 3, p: "14821", q: "478", mu: Some("2.342289") },
    GoldenMuRow { n: 4, p: "108677", q: "3505", mu: Some("2.023480") },
    GoldenMuRow { n: 5, p: "123498", q: "3983", mu: Some("2.320380") },
    GoldenMuRow { n: 6, p: "1714151", q: "55284", mu: Some("2.096515") },
    GoldenMuRow { n: 7, p: "3551800", q: "114551", mu: Some("2.047419") },
    GoldenMuRow { n: 8, p: "5265951", q: "169835", mu: Some("2.126720") },
    GoldenMuRow { n: 9, p: "19349653", q: "624056", mu: Some("2.022641") },
    GoldenMuRow { n: 10, p: "24615604", q: "793891", mu: Some("2.189908") },
    GoldenMuRow { n: 11, p: "314736901", q: "10150748", mu: Some("2.057364") },
    GoldenMuRow { n: 12, p: "654089406", q: "21095387", mu: Some("2.059538") },
    GoldenMuRow { n: 13, p: "1622915713", q: "52341522", mu: Some("2.083769") },
    GoldenMuRow { n: 14, p: "7145752258", q: "230461475", mu: Some("2.184225") },
    GoldenMuRow { n: 15, p: "244578492485", q: "7888031672", mu: Some("2.031550") },
    GoldenMuRow { n: 16, p: "496302737228", q: "16006524819", mu: Some("2.160820") },
    GoldenMuRow { n: 17, p: "21585596193289", q: "696168598889", mu: Some("2.048912") },
    GoldenMuRow { n: 18, p: "65253091317095", q: "2104512321486", mu: Some("2.017121") },
    GoldenMuRow { n: 19, p: "86838687510384", q: "2800680920375", mu: Some("2.049611") },
    GoldenMuRow { n: 20, p: "325769153848247", q: "10506555082611", mu: Some("2.034434") },
    GoldenMuRow { n: 21, p: "738376995206878", q: "23813791085597", mu: Some("2.026878") },
    GoldenMuRow { n: 22, p: "1064146149055125", q: "34320346168208", mu: Some("2.020155") },
    GoldenMuRow { n: 23, p: "1802523144262003", q: "58134137253805", mu: Some("2.057247") },
    GoldenMuRow { n: 24, p: "10076761870365140", q: "324991032437233", mu: Some("2.020858") },
    GoldenMuRow { n: 25, p: "11879285014627143", q: "383125169691038", mu: Some("2.021449") },
    GoldenMuRow { n: 26, p: "21956046884992283", q: "708116202128271", mu: Some("2.049213") },
    GoldenMuRow { n: 27, p: "99703472554596275", q: "3215589978204122", mu: Some("2.009654") },
    GoldenMuRow { n: 28, p: "121659519439588558", q: "3923706180332393", mu: Some("2.050107") },
    GoldenMuRow { n: 29, p: "708001069752539065", q: "22834120879866087", mu: Some("2.040614") },
    GoldenMuRow { n: 30, p: "2953663798449744818", q: "95260189699796741", mu: Some("2.023276") },
];

/// Exponent table for zeta(3) (30 rows).
pub const MU_ZETA3: &[GoldenMuRow] = &[
    GoldenMuRow { n: 1, p: "1", q: "1", mu: None },
    GoldenMuRow { n: 2, p: "5", q: "4", mu: Some("2.191267") },
    GoldenMuRow { n: 3, p: "6", q: "5", mu: Some("3.843922") },
    GoldenMuRow { n: 4, p: "113", q: "94", mu: Some("2.103378") },
    GoldenMuRow { n: 5, p: "119", q: "99", mu: Some("2.222511") },
    GoldenMuRow { n: 6, p: "232", q: "193", mu: Some("2.102718") },
    GoldenMuRow { n: 7, p: "351", q: "292", mu: Some("2.302278") },
    GoldenMuRow { n: 8, p: "1636", q: "1361", mu: Some("2.038931") },
    GoldenMuRow { n: 9, p: "1987", q: "1653", mu: Some("2.309777") },
    GoldenMuRow { n: 10, p: "19519", q: "16238", mu: Some("2.232018") },
    GoldenMuRow { n: 11, p: "177658", q: "147795", mu: Some("2.084580") },
    GoldenMuRow { n: 12, p: "374835", q: "311828", mu: Some("2.057472") },
    GoldenMuRow { n: 13, p: "552493", q: "459623", mu: Some("2.065833") },
    GoldenMuRow { n: 14, p: "927328", q: "771451", mu: Some("2.053480") },
    GoldenMuRow { n: 15, p: "1479821", q: "1231074", mu: Some("2.072380") },
    GoldenMuRow { n: 16, p: "3886970", q: "3233599", mu: Some("2.138006") },
    GoldenMuRow { n: 17, p: "28688611", q: "23866267", mu: Some("2.041149") },
    GoldenMuRow { n: 18, p: "32575581", q: "27099866", mu: Some("2.041133") },
    GoldenMuRow { n: 19, p: "61264192", q: "50966133", mu: Some("2.114414") },
    GoldenMuRow { n: 20, p: "461424925", q: "383862797", mu: Some("2.124760") },
    GoldenMuRow { n: 21, p: "5136938367", q: "4273456900", mu: Some("2.022499") },
    GoldenMuRow { n: 22, p: "5598363292", q: "4657319697", mu: Some("2.044823") },
    GoldenMuRow { n: 23, p: "10735301659", q: "8930776597", mu: Some("2.025155") },
    GoldenMuRow { n: 24, p: "16333664951", q: "13588096294", mu: Some("2.064764") },
    GoldenMuRow { n: 25, p: "59736296512", q: "49695065479", mu: Some("2.014150") },
    GoldenMuRow { n: 26, p: "76069961463", q: "63283161773", mu: Some("2.082353") },
    GoldenMuRow { n: 27, p: "516156065290", q: "429394036117", mu: Some("2.006174") },
    GoldenMuRow { n: 28, p: "592226026753", q: "492677197890", mu: Some("2.128367") },
    GoldenMuRow { n: 29, p: "18282936867880", q: "15209709972817", mu: Some("2.007412") },
    GoldenMuRow { n: 30, p: "18875162894633", q: "15702387170707", mu: Some("2.056200") },
];

/// Leading 27 partial quotients of pi^2.
pub const CF_PI2: &[u64] = &[9, 1, 6, 1, 2, 47, 1, 8, 1, 1, 2, 2, 1, 1, 8, 3, 1, 10, 5, 1, 3, 1, 2, 1, 1, 3, 15];

/// Leading 21 partial quotients of pi^3.
pub const CF_PI3: &[u64] = &[31, 159, 3, 7, 1, 13, 2, 1, 3, 1, 12, 2, 2, 4, 34, 2, 43, 3, 1, 3, 2];

/// Reference decimal expansion of zeta(3) (OEIS A002117 prefix).
pub const ZETA3_A002117: &str =
    "1.202056903159594285399738161511449990764986292340498881792271555341838205786313090186455873609335258146199157795260719418";

/// Historical upper bounds for the pi^2 exponent (documentation fixture).
pub const HISTORY_PI2: &[GoldenHistoryRow] = &[
    GoldenHistoryRow { bound: "11.85078", reference: "Apery", year: 1976 },
    GoldenHistoryRow { bound: "10.02979", reference: "Dvornicich, Viola", year: 1987 },
    GoldenHistoryRow { bound: "5.441243", reference: "Rhin, Viola", year: 2001 },
];

/// Historical upper bounds for the zeta(3) exponent (documentation fixture).
pub const HISTORY_ZETA3: &[GoldenHistoryRow] = &[
    GoldenHistoryRow { bound: "13.41782", reference: "Apery", year: 1979 },
    GoldenHistoryRow { bound: "7.377956", reference: "Hata", year: 2000 },
    GoldenHistoryRow { bound: "5.513891", reference: "Rhin, Viola", year: 2001 },
];

/// Golden table selector.
pub fn mu_table_for(constant: &str) -> Option<&'static [GoldenMuRow]> {
    match constant {
        "pi^2" => Some(MU_PI2),
        "pi^3" => Some(MU_PI3),
        "zeta3" => Some(MU_ZETA3),
        _ => None,
    }
}
