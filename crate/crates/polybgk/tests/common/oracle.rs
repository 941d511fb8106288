// Generated by tests/oracle/constants.py.
#![allow(clippy::excessive_precision, clippy::approx_constant)]
// nu, theta, delta, q, A, lambda_delta, c_nu, c_density, c_tail, c_momentum, c_gaussian, c_growth
pub const CONSTANTS_ORACLE: [[f64; 12]; 36] = [
    [-0.4, 0.1, 1.0, 7.0, 7.3529411764705882353e-1, 1.1283791670955125739, 1.4, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 2.0061315139572268353e+8, 1.4750966940861962024e+8],
    [-0.4, 0.5, 1.0, 7.0, 8.3333333333333333333e-1, 1.1283791670955125739, 1.4, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 7.7082612386830994161e+6, 6.4235501989025828468e+6],
    [-0.4, 1.0, 1.0, 7.0, 1.0, 1.1283791670955125739, 1.4, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 1.8882259318227366736e+6, 1.8882249318227366736e+6],
    [0.0, 0.1, 1.0, 7.0, 1.0, 1.1283791670955125739, 1.0, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 1.956647172622281745e+8, 1.956647162622281745e+8],
    [0.0, 0.5, 1.0, 7.0, 1.0, 1.1283791670955125739, 1.0, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 7.5727298725727085455e+6, 7.5727288725727085455e+6],
    [0.0, 1.0, 1.0, 7.0, 1.0, 1.1283791670955125739, 1.0, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 1.868471430958858706e+6, 1.868470430958858706e+6],
    [0.5, 0.1, 1.0, 7.0, 1.8181818181818181818, 1.1283791670955125739, 2.0, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 2.1838056468023011305e+8, 3.9705557032769111463e+8],
    [0.5, 0.5, 1.0, 7.0, 1.3333333333333333333, 1.1283791670955125739, 2.0, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 8.1948882664933445608e+6, 1.0926516355324459414e+7],
    [0.5, 1.0, 1.0, 7.0, 1.0, 1.1283791670955125739, 2.0, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 1.9591547088073497118e+6, 1.9591537088073497118e+6],
    [0.9, 0.1, 1.0, 7.0, 5.2631578947368421053, 1.1283791670955125739, 2.8, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 2.7436570599301322822e+8, 1.4440300262790169906e+9],
    [0.9, 0.5, 1.0, 7.0, 1.8181818181818181818, 1.1283791670955125739, 2.8, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 9.7282506351354888805e+6, 1.768772660933725251e+7],
    [0.9, 1.0, 1.0, 7.0, 1.0, 1.1283791670955125739, 2.8, 4.4664730877688829019e+2, 5.0532374533577516128e+3, 7.3178695070005377464e+6, 2.1826513731242076651e+6, 2.1826503731242076651e+6],
    [-0.4, 0.1, 2.0, 8.0, 7.3529411764705882353e-1, 1.0, 1.4, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 6.6359396056003348388e+10, 4.8793673569855403226e+10],
    [-0.4, 0.5, 2.0, 8.0, 8.3333333333333333333e-1, 1.0, 1.4, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 1.1735758120815625706e+9, 9.779798425679688088e+8],
    [-0.4, 1.0, 2.0, 8.0, 1.0, 1.0, 1.4, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 2.0599427749219925288e+8, 2.0599427649219925288e+8],
    [0.0, 0.1, 2.0, 8.0, 1.0, 1.0, 1.0, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 6.5380560257019588729e+10, 6.5380560256019588729e+10],
    [0.0, 0.5, 2.0, 8.0, 1.0, 1.0, 1.0, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 1.1651315860578819912e+9, 1.1651315850578819912e+9],
    [0.0, 1.0, 2.0, 8.0, 1.0, 1.0, 1.0, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 2.0552196447643701387e+8, 2.0552196347643701387e+8],
    [0.5, 0.1, 2.0, 8.0, 1.8181818181818181818, 1.0, 2.0, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 7.0547556662128117334e+10, 1.2826828483841475879e+11],
    [0.5, 0.5, 2.0, 8.0, 1.3333333333333333333, 1.0, 2.0, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 1.209706258902479644e+9, 1.6129416772033061919e+9],
    [0.5, 1.0, 2.0, 8.0, 1.0, 1.0, 2.0, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 2.0801517085187113028e+8, 2.0801516985187113028e+8],
    [0.9, 0.1, 2.0, 8.0, 5.2631578947368421053, 1.0, 2.8, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 8.6208929445868271877e+10, 4.5373120760456985198e+11],
    [0.9, 0.5, 2.0, 8.0, 1.8181818181818181818, 1.0, 2.8, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 1.3448138752813689133e+9, 2.4451161350570343878e+9],
    [0.9, 1.0, 2.0, 8.0, 1.0, 1.0, 2.8, 2.4968343609811516656e+3, 3.4894320998194397671e+4, 5.7170855523441701144e+8, 2.1557217910406695447e+8, 2.1557217810406695447e+8],
    [-0.4, 0.1, 3.0, 9.0, 7.3529411764705882353e-1, 7.5225277806367504926e-1, 1.4, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.1893347660973465299e+13, 1.6098049750715048014e+13],
    [-0.4, 0.5, 3.0, 9.0, 8.3333333333333333333e-1, 7.5225277806367504926e-1, 1.4, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 1.7401952371650284166e+11, 1.4501626976291903472e+11],
    [-0.4, 1.0, 3.0, 9.0, 1.0, 7.5225277806367504926e-1, 1.4, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.1690148473527561415e+10, 2.1690148472527561415e+10],
    [0.0, 0.1, 3.0, 9.0, 1.0, 7.5225277806367504926e-1, 1.0, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.1727125247180860449e+13, 2.1727125247179860449e+13],
    [0.0, 0.5, 3.0, 9.0, 1.0, 7.5225277806367504926e-1, 1.0, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 1.73560538145389302e+11, 1.73560538144389302e+11],
    [0.0, 1.0, 3.0, 9.0, 1.0, 7.5225277806367504926e-1, 1.0, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.1680895136502638828e+10, 2.1680895135502638828e+10],
    [0.5, 0.1, 3.0, 9.0, 1.8181818181818181818, 7.5225277806367504926e-1, 2.0, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.2741092203261128263e+13, 4.1347440369563869569e+13],
    [0.5, 0.5, 3.0, 9.0, 1.3333333333333333333, 7.5225277806367504926e-1, 2.0, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 1.7636037838238304697e+11, 2.3514717117517739597e+11],
    [0.5, 1.0, 3.0, 9.0, 1.0, 7.5225277806367504926e-1, 2.0, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.1737341061950768875e+10, 2.1737341060950768875e+10],
    [0.9, 0.1, 3.0, 9.0, 5.2631578947368421053, 7.5225277806367504926e-1, 2.8, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.650227607455543856e+13, 1.3948566355028651874e+14],
    [0.9, 0.5, 3.0, 9.0, 1.8181818181818181818, 7.5225277806367504926e-1, 2.8, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 1.867460362960203025e+11, 3.3953824780912782272e+11],
    [0.9, 1.0, 3.0, 9.0, 1.0, 7.5225277806367504926e-1, 2.8, 1.2059477336975983835e+4, 1.8798864714331043913e+5, 4.2677814964827136137e+10, 2.1946720177436442942e+10, 2.1946720176436442942e+10],
];
