// Frozen 50-digit references: t and two-tailed p for paired samples.
#[allow(clippy::approx_constant, clippy::excessive_precision)]
pub const T_CASES: [(&[f64], &[f64], f64, f64); 20] = [
    (
        &[-1.13755, -0.87621, 0.168336],
        &[0.768911, -0.196671, -1.761548],
        -0.19334373020592078392,
        0.86454536126996298596,
    ),
    (
        &[-0.118151, 0.875587, -0.690665],
        &[-1.735476, 0.427379, 0.425284],
        0.39977242659392839083,
        0.72797785624376494906,
    ),
    (
        &[-0.030082, 1.156339, -0.008222, 0.122235],
        &[1.072624, 0.372254, 0.28012, 1.042658],
        -0.89632644708709710786,
        0.43612822027808076513,
    ),
    (
        &[0.608666, 1.549347, 2.575612, 0.971124, 1.079676],
        &[-0.761052, 1.95873, -0.554385, 0.233817, 1.774956],
        1.2021893959880039914,
        0.29559104269246175399,
    ),
    (
        &[4.425005, 2.759626, 2.532313, 3.907712, 3.822224],
        &[-0.868134, 1.598431, -0.403601, 0.815297, -1.146663],
        4.6379357080401367594,
        0.0097490625684201726935,
    ),
    (
        &[-0.436164, 0.827086, 1.69831, -0.194079, -0.172122, 0.448784],
        &[-1.168107, 1.008125, -0.803095, 1.993587, 1.211563, 1.108794],
        -0.29047462291579598335,
        0.78311540720819728126,
    ),
    (
        &[
            0.105515, -0.078225, -0.543341, -1.010109, -0.113596, -1.318524, -0.553051,
        ],
        &[-2.396783, 0.96878, -0.272454, -2.163805, -0.438616, 0.209959, 1.143696],
        -0.13889817547154350681,
        0.89407535948434269883,
    ),
    (
        &[
            0.720599, -1.094452, 0.227033, 0.637078, 0.732613, -1.712386, 1.776099, -0.54373,
        ],
        &[
            1.382014, -1.045504, 0.088071, 1.594875, -1.136483, 0.599005, -0.112785, -0.088788,
        ],
        -0.13462193475901332951,
        0.8966998513855246634,
    ),
    (
        &[
            1.748719, 0.526404, 0.299626, 1.56369, 1.824928, 1.533472, -1.639878, 1.323251, 0.970321, 0.601706,
        ],
        &[
            0.124629, 0.536707, 1.145619, -0.651736, 0.516178, 0.125838, -1.384882, 0.76662, 0.597973, -1.242818,
        ],
        2.5819397638885225799,
        0.029602278186002407909,
    ),
    (
        &[
            3.559069, 2.298976, 3.549424, 2.910528, 3.175555, 3.131215, 3.047589, 2.614733, 2.213212, 5.202974,
            1.370932, 4.406726,
        ],
        &[
            -0.122874, -0.02575, -0.668859, -0.394691, 0.539219, -0.024552, 1.232715, 0.169687, -1.208763, 0.425016,
            -0.327827, 1.872481,
        ],
        11.119271307055292616,
        2.5362868072725761476e-7,
    ),
    (
        &[
            -0.876853, 0.836025, 0.449981, -0.151916, -0.082718, 1.00251, 0.484175, 1.788047, -0.928692, 1.21896,
            0.366117, -0.836553, -0.363145, -0.761187, 0.32251,
        ],
        &[
            0.220266, 0.706941, -0.603961, -0.58504, -0.178411, -0.686977, 1.522872, -2.122079, -0.197096, -1.178623,
            -0.032604, 0.885842, -1.505237, 0.6076, -1.725324,
        ],
        1.1994931481974128405,
        0.2502434412933103553,
    ),
    (
        &[
            -1.026034, 0.762554, 1.438148, 0.486777, 1.233712, 0.597696, -0.126015, 1.966992, 0.009102, -1.235245,
            0.112134, 0.871632, 0.188756, 2.044169, 1.609053, 0.61842, -0.085543, -0.060434,
        ],
        &[
            0.376956, -2.158359, 0.480167, 0.579929, 0.574846, -0.606969, -1.373788, 0.230568, 0.379428, -0.750051,
            0.842426, 0.963794, -1.165395, -0.479567, -1.381527, -1.183803, -2.142284, 0.457526,
        ],
        2.8018338193556287165,
        0.012257997902356886553,
    ),
    (
        &[
            0.19103, 0.723426, 0.304854, -0.221635, 0.656417, -1.112657, 2.103409, -1.034846, 0.350808, 1.085272,
            -0.62268, 0.253508, -1.032243, -0.365761, -0.714483, 1.989766, -0.39029, -0.545398, 1.938802, 0.59171,
        ],
        &[
            1.664437, 1.573516, 2.103988, 0.245915, -0.249512, -0.978778, -0.75759, -1.94632, 2.212161, -0.872304,
            1.582572, 0.186451, 0.993023, 0.167794, 0.025749, 0.773861, -0.453005, -1.624286, 2.073939, 0.787793,
        ],
        -0.55017321293341078528,
        0.58861077852705376585,
    ),
    (
        &[
            2.28878, 2.414402, -0.403982, 1.460666, 0.015662, 0.381063, 0.367346, 1.224112, 2.004078, 1.827454,
            1.466845, 0.018502, 1.706926, 0.447957, 1.913442, -1.371785, 2.245888, 1.73034, 0.046402, 1.379519,
            2.302488, 1.943867, -0.718335, 0.149121, 0.259314,
        ],
        &[
            1.491329, -0.294843, 1.582317, -0.495254, 1.199991, -0.363118, 0.055323, -0.563611, -0.613626, -1.671153,
            -0.463854, 1.284798, 0.182637, -0.993358, 1.239585, 0.602352, -0.157643, -0.364077, 2.093137, -0.079048,
            -0.310874, -2.020924, -0.121791, 1.106447, -2.160904,
        ],
        2.8126184475100708626,
        0.0096421785369509977219,
    ),
    (
        &[
            2.811507, 2.164483, 1.576791, 3.410538, 5.877645, 3.554768, 2.92925, 1.511651, 3.196218, 3.326773,
            1.576338, 4.462183, 2.923878, 4.072029, 2.630801, 2.279322, 2.805984, 2.71547, 4.615291, 4.523478,
            3.140522, 4.528621, 3.524167, 4.027005, 5.335278, 4.113709, 4.047154, 2.982152, 4.118222, 2.351635,
        ],
        &[
            -0.309592, -0.362257, 0.541969, -0.832418, 1.049951, 1.037241, 0.856028, -0.899295, 0.227474, -2.009055,
            0.995624, -0.209357, 0.55403, 1.147511, 0.412673, 0.739229, 0.704046, 0.327105, -0.886421, -0.002301,
            -0.088604, -0.803839, 0.517619, 0.365963, -1.141171, -0.538606, -1.22426, 1.409059, -1.29333, -0.161464,
        ],
        12.097235733741025342,
        7.4456842899730140707e-13,
    ),
    (
        &[
            -0.021449, -1.470138, -0.957502, -1.049669, -0.219095, 1.146545, -1.18624, 1.152839, 1.356195, 0.362324,
            -1.900725, 1.038573, -0.623706, 2.144595, -1.115362, -0.4085, 0.611041, -0.13503, 0.831318, 0.406469,
            0.14872, 0.553893, -1.413588, 1.496087, -0.593299, -0.194589, -1.181882, -1.022844, 0.565506, 1.190632,
            1.295516, 1.22608, 1.187316, 0.509782, -0.0366,
        ],
        &[
            0.252277, 0.083059, 0.569698, -0.133784, 1.661762, -1.225299, -1.211681, 1.82347, 1.533941, 0.04613,
            -1.530809, 1.136307, -0.533848, 0.733542, 1.00545, 0.941845, 0.906771, 0.682099, 0.135028, -0.78617,
            1.283112, 1.155232, 0.429022, -0.443802, 0.291126, 0.392803, -1.0263, 1.974372, -0.383762, -0.468814,
            1.124023, 0.169359, -0.482696, -0.135157, 1.194211,
        ],
        -1.0074185753058812222,
        0.32084983093445008035,
    ),
    (
        &[
            -2.075711, -0.457497, 0.504906, 1.143723, -0.955171, 1.594584, 1.846773, 0.066487, 0.279269, 1.194583,
            0.34338, -0.977577, -1.028188, 0.042797, 1.2379, -0.764926, -0.600377, -0.539278, 0.095025, 1.093075,
            -0.858829, 0.64013, 0.337711, 1.365102, -1.65065, -0.188884, 0.25697, -0.60967, 1.591757, 1.615557,
            0.02495, 1.31424, -0.753884, 0.494796, 0.748568, -1.209427, -0.39774, 0.895006, 0.298025, -1.607611,
        ],
        &[
            0.712941, 1.464505, -0.703799, 0.643654, -1.349206, -0.159309, -0.073, -0.220494, -0.904098, -1.065221,
            0.453727, 0.963507, 0.436772, -0.599759, 0.934533, -0.121054, 0.360617, 0.465619, 0.64033, -1.884958,
            -1.498488, 0.408355, 0.254107, 0.711381, 0.120733, 0.128475, 0.49139, 0.883315, 2.141409, -0.477637,
            0.120344, 0.397872, 0.050269, 0.567141, -1.641552, -0.016851, -2.440618, 0.16723, -0.443393, -0.721796,
        ],
        0.60925071841299331699,
        0.54589133645286741004,
    ),
    (
        &[
            -0.715764, 1.224124, 0.723882, 2.252826, 1.323809, 1.807148, -0.518078, 0.249299, 2.20162, 1.335659,
            0.908637, 0.017704, 1.385953, -0.245907, 0.447205, 1.314028, -0.461196, -1.390431, 1.792106, 1.720524,
            1.63762, -2.694701, 2.389339, -0.547294, 0.025188, 0.226886, 1.998567, 0.387336, 1.032157, 0.506721,
            0.191166, 1.356225, 1.273315, 1.591886, 1.141781, -0.58507, 3.707657, -0.946733, 0.128022, 0.306638,
            0.951571, 0.419195, 2.253814, -0.156928, 1.646932, 1.447828, 2.116367, 1.03108, -0.01943, 0.838545,
        ],
        &[
            0.123773, 0.201207, 1.872059, -1.332566, -0.916197, -0.615867, 0.648613, 1.159761, 2.225079, -0.129753,
            0.601131, -0.377304, -0.705015, 0.446308, -2.125466, -1.668591, 1.773192, -0.344801, 0.126033, 0.278616,
            -1.981192, -0.529025, -0.039518, -0.282278, 1.469086, 0.34649, 0.256163, -1.378928, 0.066077, -0.772751,
            1.525502, 1.155459, -0.861654, -0.756279, -0.521084, -0.051318, 0.338054, 0.252122, 0.370412, -1.745779,
            -2.020916, -0.82906, -1.189148, 1.624535, -0.647226, -0.051132, 0.184467, -0.717183, -0.112377, -1.14955,
        ],
        3.9651834759996940429,
        0.00023842716799378825843,
    ),
    (
        &[
            2.030969, 1.805353, -1.157748, 1.949933, 1.166403, -0.452108, 2.025999, 1.672023, 0.913758, 1.935029,
            1.880269, 1.490555, 2.562751, 1.362218, 1.100901, 0.609432, 1.004924, -0.781231, 0.714739, 1.556581,
            2.352767, 2.019624, 1.854538, 0.688636, 1.852832, 0.062816, 1.699109, 1.758787, 0.30986, 0.491499,
            0.250979, 0.66359, 0.635193, 0.470425, 0.113639, 2.843468, -0.199197, 0.991804, 0.182007, 2.956687,
            2.861029, 1.744112, 0.458959, 1.492052, 0.344812, 2.09897, 1.397121, 1.057484, 1.567377, 1.744053,
            -0.453619, 3.08804, 1.077664, 1.459217, 0.974168, -0.555167, 0.329291, -0.071614, 1.257185, 0.261031,
        ],
        &[
            1.787598, 0.043656, -1.10113, 0.408265, 0.265877, 1.718505, 0.133464, 0.072032, 0.037484, -0.562605,
            0.242184, 1.502432, -0.176991, 0.067708, 1.408017, 0.148498, 0.564994, -0.268739, -2.380349, 0.424987,
            0.834018, -1.029229, -0.77678, -0.131174, 0.3411, -0.930288, -0.659579, 1.575291, 0.07407, 0.802644,
            2.00903, -0.380593, -0.993464, 1.337735, -0.332371, -1.012227, 0.324071, -0.269277, 0.016109, -0.665711,
            1.090262, 0.183159, -1.054204, -1.088585, -0.663658, -0.707369, -0.559922, 0.624149, 0.291014, 0.491741,
            1.221515, -2.312964, -0.513172, 0.594442, -0.740027, 2.038932, -0.401236, 0.985498, -0.728346, 0.345431,
        ],
        5.6373462937761130092,
        5.125066615167345845e-7,
    ),
    (
        &[
            2.807921, 3.706839, 2.570762, 3.765205, 5.174948, 2.368952, 2.159694, 4.5175, 4.686591, 3.622255, 3.005247,
            2.573634, 1.260924, 3.053617, 4.135359, 5.35616, 2.410595, 2.439263, 3.877883, 2.694648, 2.684768,
            4.989005, 3.906859, 4.869441, 4.018642, 3.412081, 5.641051, 3.947169, 3.161893, 2.397844, 2.885403,
            3.440803, 2.757447, 3.222724, 3.801714, 3.706853, 2.464855, 2.422042, 2.859306, 3.182727, 4.275357,
            1.134211, 2.31933, 2.352208, 1.902902, 4.910655, 1.766406, 3.483097, 3.605065, 2.036434, 1.889346,
            2.535351, 2.069186, 1.942542, 1.911266, 4.211323, 1.775197, 3.805522, 2.78589, 4.494575, 5.002759,
            1.697775, 5.393006, 1.740863, 4.363869, 3.570941, 2.657836, 3.971876, 2.458924, 2.913265, 2.676116,
            4.224643, 3.074283, 3.643806, 3.078947, 2.292424, 2.283415, 3.761206, 2.009958, 2.40534,
        ],
        &[
            0.969888, 0.247967, 1.684539, -1.370072, 0.199613, 0.698474, 0.149337, 0.236471, 0.887843, 0.637233,
            0.168622, 1.854066, -0.344953, 0.745056, 0.007987, 0.632929, -0.265268, -0.309885, -0.749574, -0.731167,
            -0.320604, -1.165761, 1.003746, -0.768978, 1.822317, -0.072641, -0.100073, 0.607958, -0.144064, -0.739983,
            1.309339, -0.54243, -0.031119, 0.400593, 0.307746, 1.706419, 2.030134, -0.487869, 2.221424, -0.149239,
            -0.827236, -0.108812, 1.445008, 0.312414, 1.101604, 1.120487, 0.973814, -0.141496, 0.300851, 2.594964,
            -0.422453, 0.451423, 1.221827, 0.493744, 0.628253, 1.705446, 0.41067, -1.072599, 1.170266, 0.43466,
            -0.289374, -0.900334, 0.37181, 0.412539, -0.826247, 0.878208, 0.304537, -1.870003, 0.460301, 0.333089,
            0.747942, 0.0281, 1.336383, -0.219586, -0.50781, -2.408295, -0.115835, -0.263265, 0.052425, -0.801915,
        ],
        17.764814670064657374,
        2.5555879990163269235e-29,
    ),
];
