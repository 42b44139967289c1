//! Ratios frozen from a pilot run of the shipped suites, in row order.

#![allow(dead_code)]

pub const VDC: [f64; 50] = [
    2.9126213592228993e-2,
    5.660377358590164e-2,
    2.991026919294978e-3,
    1.4977533691016864e-3,
    2.999100303693936e-4,
    9.090909090904717e-1,
    8.333333333592591e-1,
    9.900990098732674e-1,
    9.950248754691612e-1,
    9.990010040218051e-1,
    2.277713516442323e-1,
    4.292979688460846e-1,
    4.187109095037081e-3,
    8.620142844165078e-4,
    3.7299611131023994e-3,
    5.000000000000087e-1,
    2.9004928461120233e-1,
    9.090909090906576e-1,
    9.523809523933252e-1,
    9.90099009450817e-1,
    4.5015231698157895e-2,
    5.8639866706228595e-2,
    7.133401399282971e-1,
    9.432180031098882e-1,
    9.805199421959369e-1,
    2.4429364532643605e-2,
    5.408355154092381e-1,
    4.999999999996878e-1,
    6.666666666602488e-1,
    9.090909090523163e-1,
    9.254208371791595e-2,
    1.2914712749372167e-2,
    1.5316310554014407e-2,
    6.169615444061752e-1,
    7.270277665815591e-1,
    2.2847403972796987e-1,
    1.2281961998828667e-2,
    7.7331089583082815e-3,
    3.027260211672653e-3,
    5.000000000008443e-1,
    3.7328573719629093e-1,
    5.1260884429153906e-2,
    4.0821299164563556e-2,
    9.675561778375787e-3,
    4.844263203789821e-3,
    3.0419208212746063e-1,
    9.804394966715252e-2,
    2.49050842126239e-2,
    2.852256929730905e-3,
    2.4454488807196225e-3,
];
pub const SLEMMA: [f64; 8] = [
    5.400779064263896e-2,
    4.2730412253434234e-2,
    1.0252336809240857e-2,
    1.0321767179142998e-2,
    2.308544608307192e-2,
    1.1265219529605252e-2,
    3.8910085988267543e-3,
    8.28486910642042e-4,
];
pub const DELTA: [f64; 21] = [
    2.3537206065164146e-1,
    2.2608620284873776e-1,
    2.45060953477316e-1,
    3.4350682864240434e-1,
    2.4841891855201573e-1,
    4.137947709102399e-1,
    2.3488872692990584e-1,
    2.9959758082893256e-1,
    2.45000805541487e-1,
    3.509220879524779e-1,
    2.4836855570531713e-1,
    4.1734221173927394e-1,
    2.2698522459457957e-1,
    2.4817251329776924e-1,
    2.79544133339101e-1,
    2.4063123641334722e-1,
    3.400972398673495e-1,
    3.783092166483439e-1,
    2.4642970227399894e-1,
    3.9971677085063767e-1,
    4.262047005560035e-1,
];
pub const SHIFTED: [f64; 100] = [
    6.19638008186924e-4,
    4.2016713252637575e-3,
    6.7772824984797305e-3,
    8.673350431403848e-3,
    1.4467281031021418e-2,
    2.7459503419554082e-2,
    2.1560899087715257e-2,
    4.4568803292326944e-2,
    3.855232360608409e-2,
    5.642210175677723e-2,
    4.429448654100834e-2,
    8.480087046337342e-2,
    6.320263775734396e-2,
    7.958861905749195e-2,
    7.336956487237968e-2,
    9.404079132174074e-2,
    4.6945612110170204e-2,
    1.1314397684280275e-1,
    5.7094977094958796e-2,
    1.1062671610239566e-1,
    6.019645301820407e-2,
    6.37445952784707e-2,
    3.4489437877136295e-3,
    1.1144178917023768e-1,
    6.901406901153703e-3,
    3.0033905816020418e-2,
    1.5505729210671157e-3,
    3.05188932253239e-2,
    6.632664626379428e-2,
    5.32823408142967e-2,
    9.372724644573371e-2,
    4.348829558707854e-3,
    5.746727665421428e-2,
    6.188185471896367e-2,
    8.860493622180184e-2,
    3.356404567764928e-2,
    1.4434716856151455e-1,
    9.38636968158077e-2,
    8.648997670006106e-2,
    5.179782699142033e-3,
    1.3637057108158288e-1,
    1.4381665397793505e-2,
    1.096242023320645e-1,
    2.4141561918281727e-2,
    2.774081246449366e-2,
    5.94780555286565e-2,
    5.3775369195912325e-2,
    1.1885838908556128e-1,
    1.2223505810019467e-2,
    9.53598439746556e-3,
    3.773549170092261e-2,
    2.8830196411251337e-2,
    1.706615798313335e-3,
    7.174319238852997e-2,
    6.495314624995374e-2,
    7.921568371233577e-2,
    7.431203893977324e-2,
    4.914173406393593e-2,
    1.2805008342325258e-2,
    1.7151405559361285e-1,
    1.4776089400739418e-2,
    7.71509548112699e-2,
    1.0408281470295501e-1,
    1.282192523245985e-3,
    8.244173646082846e-2,
    1.2539177489309692e-2,
    2.4636067223388343e-3,
    5.750679761693169e-2,
    6.724510122457567e-3,
    4.791074242535303e-3,
    5.522989977287103e-3,
    5.4026209871105874e-2,
    8.969081978022535e-3,
    1.5486179459823515e-1,
    4.102735205624281e-2,
    9.893105262108452e-2,
    5.311950102262949e-2,
    1.0908919947910185e-1,
    6.811014021620279e-3,
    3.992220963555547e-2,
    8.20831341926439e-3,
    1.4244899555248886e-1,
    5.22951079732682e-3,
    1.7693603282179646e-2,
    5.93353072465184e-2,
    1.0503862857746321e-1,
    5.967705795649184e-2,
    1.1109114460097205e-2,
    3.3677282476753485e-3,
    6.2116536428101936e-2,
    8.816543002983439e-2,
    4.915450654745067e-2,
    8.008331293715382e-2,
    4.277508508555954e-2,
    7.937644177284237e-2,
    2.778868420026279e-2,
    1.0506260860255101e-2,
    5.6385461251156344e-2,
    9.097560791816315e-3,
    7.65159975124076e-2,
];
pub const PERRON: [f64; 8] = [
    1.2142435979998267e-1,
    2.150083990628145e-1,
    9.268450459622399e-2,
    8.212576054971195e-2,
    8.420408306931751e-2,
    1.443190366057626e-1,
    2.0792493414305305e-1,
    2.4193055119615717e-1,
];
pub const TYPESUM: [Option<f64>; 28] = [
    None,
    None,
    Some(4.699743499595075e-3),
    Some(2.0236285009692735e-4),
    Some(1.82773972041088e-3),
    Some(3.3988821335021154e-3),
    None,
    Some(6.6043825139401845e-3),
    Some(5.7838991281559445e-3),
    Some(2.0325283404132753e-3),
    Some(9.766155400717813e-4),
    Some(2.1783968046122293e-3),
    Some(3.098134340767982e-3),
    Some(6.2029412237536745e-3),
    None,
    Some(2.304862921189773e-3),
    Some(9.673915421617874e-3),
    Some(3.595035701653495e-3),
    Some(8.267377380331294e-3),
    Some(9.141358231624066e-3),
    None,
    Some(1.2870234989753322e-3),
    Some(3.8007899790605277e-3),
    Some(1.574639518465296e-3),
    Some(3.5100786180891574e-3),
    Some(2.550825676455714e-3),
    Some(5.19751255533277e-3),
    Some(1.0236360786984776e-2),
];

/// main-sum, g = power:1.05, N = 1e3, 1e4, 1e5: (hits, A, majorant, quotient).
pub const MAIN_SUM: [(u64, u64, f64, f64, f64); 3] = [
    (1000, 159, 8.2264852330213e0, 1.2871395309622105e2, 6.391292501809444e-2),
    (10000, 1146, 1.9719079332778104e1, 9.623009947153231e2, 2.049159196661912e-2),
    (100000, 9019, 9.45630292253785e1, 7.619408066443643e3, 1.2410810446265515e-2),
];

/// `Σ_{n<=1e4} Λ(n) λ(n)`.
pub const PNT_HECKE_SUM_1E4: f64 = 9.025724305365931e1;
