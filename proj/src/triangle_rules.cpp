#include "crenrich/quadrature.hpp"

#include <vector>

namespace crenrich
{

namespace
{

// Assembles a symmetric rule from barycentric orbits.  Weights follow the
// area-normalized convention (they sum to 1 over the whole triangle).
class RuleBuilder
{
public:
  void centroid(double w)
  {
    constexpr double third = 1.0 / 3.0;
    push(third, third, third, w);
  }

  // (a, a, 1-2a) and its cyclic rotations.
  void sym3(double a, double w)
  {
    const double c = 1.0 - 2.0 * a;
    push(a, a, c, w);
    push(c, a, a, w);
    push(a, c, a, w);
  }

  // (a, b, 1-a-b) and all six permutations.
  void sym6(double a, double b, double w)
  {
    const double c = 1.0 - a - b;
    push(a, b, c, w);
    push(b, c, a, w);
    push(c, a, b, w);
    push(a, c, b, w);
    push(c, b, a, w);
    push(b, a, c, w);
  }

  void push(double l1, double l2, double l3, double w)
  {
    nodes_.push_back({l1, l2, l3});
    weights_.push_back(w);
  }

  QuadRule2D take(int exactness_degree)
  {
    QuadRule2D rule;
    const auto n = static_cast<Eigen::Index>(nodes_.size());
    rule.nodes.resize(n, 3);
    rule.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      rule.nodes(i, 0) = nodes_[i][0];
      rule.nodes(i, 1) = nodes_[i][1];
      rule.nodes(i, 2) = nodes_[i][2];
      rule.weights[i] = weights_[i];
    }
    rule.exactness_degree = exactness_degree;
    return rule;
  }

private:
  std::vector<std::array<double, 3>> nodes_;
  std::vector<double> weights_;
};

// Gauss-Jacobi conical product rule (Duffy collapse of the unit square),
// symmetrized over all vertex permutations.  Exact through degree 2n - 1,
// with interior nodes and positive weights for any n.
QuadRule2D conical_product_rule(int n)
{
  const QuadRule1D rx = gauss_jacobi_01(n, 0.0, 1.0); // weight (1 - x)
  const QuadRule1D rs = gauss_jacobi_01(n, 0.0, 0.0);

  RuleBuilder b;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = rx.nodes[i];
      const double y = rs.nodes[j] * (1.0 - x);
      const double l1 = 1.0 - x - y;
      // double the raw product weight (the raw rule integrates over the
      // reference triangle of area 1/2), then spread over six permutations
      const double w = 2.0 * rx.weights[i] * rs.weights[j] / 6.0;
      b.push(l1, x, y, w);
      b.push(x, y, l1, w);
      b.push(y, l1, x, w);
      b.push(l1, y, x, w);
      b.push(y, x, l1, w);
      b.push(x, l1, y, w);
    }
  }
  return b.take(2 * n - 1);
}

// Symmetric orbit rules (Dunavant's tables) for the degrees whose published
// rules keep every node inside the triangle.  Degrees 11, 15, 16, 18 and 20
// violate that, so requests for them resolve to the next admissible rule.
QuadRule2D table_rule(int degree)
{
  RuleBuilder b;
  switch (degree) {
  case 1:
    b.centroid(1.0);
    break;
  case 2:
    b.sym3(1.0 / 6.0, 1.0 / 3.0);
    break;
  case 3:
    b.centroid(-0.5625);
    b.sym3(0.2, 25.0 / 48.0);
    break;
  case 4:
    b.sym3(0.44594849091596488631832925388305, 0.22338158967801146569500700843312);
    b.sym3(0.09157621350977074345957146340220, 0.10995174365532186763832632490021);
    break;
  case 5:
    b.centroid(0.225);
    b.sym3(0.47014206410511508977044120951345, 0.13239415278850618073764938783315);
    b.sym3(0.10128650732345633880098736191512, 0.12593918054482715259568394550018);
    break;
  case 6:
    b.sym3(0.24928674517091042129163855310702, 0.11678627572637936602528961138558);
    b.sym3(0.06308901449150222834033160287082, 0.05084490637020681692093680910686);
    b.sym6(0.31035245103378440541660773395655, 0.63650249912139864723014259441205,
           0.08285107561837357519355345642044);
    break;
  case 7:
    b.centroid(-0.14957004446767497031448264617551);
    b.sym3(0.26034596607904134570479766426679, 0.17561525743321691348266882420661);
    b.sym3(0.06513010290221623036887891059948, 0.05334723560883960230296261044945);
    b.sym6(0.31286549600487084236305913996091, 0.63844418856981280478426570854075,
           0.07711376089026831199824523496780);
    break;
  case 8:
    b.centroid(0.14431560767778716825109111048906);
    b.sym3(0.17056930775176020662229350149146, 0.10321737053471825028179155029212);
    b.sym3(0.05054722831703097545842355059660, 0.03245849762319808031092592834178);
    b.sym3(0.45929258829272315602881551449417, 0.09509163426728462479389610438858);
    b.sym6(0.26311282963463811342178578628464, 0.72849239295540428124100037917606,
           0.02723031417443499426484469007390);
    break;
  case 9:
    b.centroid(0.09713579628279609890744676309485);
    b.sym3(0.48968251919873762778370692483619, 0.03133470022713983234393199080984);
    b.sym3(0.43708959149293663726993036443535, 0.07782754100477543338465495857972);
    b.sym3(0.18820353561903273024096128046733, 0.07964773892720910288013526957424);
    b.sym3(0.04472951339445297061024247196780, 0.02557767565869810438673914467637);
    b.sym6(0.22196298916076569567510252769319, 0.74119859878449802069007987352342,
           0.04328353937728937728937728937729);
    break;
  case 10:
    b.centroid(0.090817990382754);
    b.sym3(0.485577633383657, 0.036725957756467);
    b.sym3(0.109481575485037, 0.045321059435528);
    b.sym6(0.141707219414880, 0.307939838764121, 0.072757916845420);
    b.sym6(0.025003534762686, 0.246672560639903, 0.028327242531057);
    b.sym6(0.009540815400299, 0.066803251012200, 0.009421666963733);
    break;
  case 12:
    b.sym3(0.488217389773805, 0.025731066440455);
    b.sym3(0.439724392294460, 0.043692544538038);
    b.sym3(0.271210385012116, 0.062858224217885);
    b.sym3(0.127576145541586, 0.034796112930709);
    b.sym3(0.021317350453210, 0.006166261051559);
    b.sym6(0.115343494534698, 0.275713269685514, 0.040371557766381);
    b.sym6(0.022838332222257, 0.281325580989940, 0.022356773202303);
    b.sym6(0.025734050548330, 0.116251915907597, 0.017316231108659);
    break;
  case 13:
    b.centroid(0.052520923400802);
    b.sym3(0.495048184939705, 0.011280145209330);
    b.sym3(0.468716635109574, 0.031423518362454);
    b.sym3(0.414521336801277, 0.047072502504194);
    b.sym3(0.229399572042831, 0.047363586536355);
    b.sym3(0.114424495196330, 0.031167529045794);
    b.sym3(0.024811391363459, 0.007975771465074);
    b.sym6(0.094853828379579, 0.268794997058761, 0.036848402728732);
    b.sym6(0.018100773278807, 0.291730066734288, 0.017401463303822);
    b.sym6(0.022233076674090, 0.126357385491669, 0.015521786839045);
    break;
  case 14:
    b.sym3(0.488963910362179, 0.021883581369429);
    b.sym3(0.417644719340454, 0.032788353544125);
    b.sym3(0.273477528308839, 0.051774104507292);
    b.sym3(0.177205532412543, 0.042162588736993);
    b.sym3(0.061799883090873, 0.014433699669777);
    b.sym3(0.019390961248701, 0.004923403602400);
    b.sym6(0.057124757403648, 0.172266687821356, 0.024665753212564);
    b.sym6(0.092916249356972, 0.336861459796345, 0.038571510787061);
    b.sym6(0.014646950055654, 0.298372882136258, 0.014436308113534);
    b.sym6(0.001268330932872, 0.118974497696957, 0.005010228838501);
    break;
  case 17:
    b.centroid(0.033437199290803);
    b.sym3(0.497170540556774, 0.005093415440507);
    b.sym3(0.482176322624625, 0.014670864527638);
    b.sym3(0.450239969020782, 0.024350878353672);
    b.sym3(0.400266239377397, 0.031107550868969);
    b.sym3(0.252141267970953, 0.031257111218620);
    b.sym3(0.162047004658461, 0.024815654339665);
    b.sym3(0.075875882260746, 0.014056073070557);
    b.sym3(0.015654726967822, 0.003194676173779);
    b.sym6(0.010186928826919, 0.334319867363658, 0.008119655318993);
    b.sym6(0.135440871671036, 0.292221537796944, 0.026805742283163);
    b.sym6(0.054423924290583, 0.319574885423190, 0.018459993210822);
    b.sym6(0.012868560833637, 0.190704224192292, 0.008476868534328);
    b.sym6(0.067165782413524, 0.180483211648746, 0.018292796770025);
    b.sym6(0.014663182224828, 0.080711313679564, 0.006665632004165);
    break;
  case 19:
    b.centroid(0.032906331388919);
    b.sym3(0.489609987073006, 0.010330731891272);
    b.sym3(0.454536892697893, 0.022387247263016);
    b.sym3(0.401416680649431, 0.030266125869468);
    b.sym3(0.255551654403098, 0.030490967802198);
    b.sym3(0.177077942152130, 0.024159212741641);
    b.sym3(0.110061053227952, 0.016050803586801);
    b.sym3(0.055528624251840, 0.008084580261784);
    b.sym3(0.012621863777229, 0.002079362027485);
    b.sym6(0.003611417848412, 0.395754787356943, 0.003884876904981);
    b.sym6(0.134466754530780, 0.307929983880436, 0.025574160612022);
    b.sym6(0.014446025776115, 0.264566948406520, 0.008880903573338);
    b.sym6(0.046933578838178, 0.358539352205951, 0.016124546761731);
    b.sym6(0.002861120350567, 0.157807405968595, 0.002491941817491);
    b.sym6(0.223861424097916, 0.075050596975911, 0.018242840118951);
    b.sym6(0.034647074816760, 0.142421601113383, 0.010258563736199);
    b.sym6(0.010161119296278, 0.065494628082938, 0.003799928855302);
    break;
  default:
    throw std::invalid_argument("table_rule: no table for this degree");
  }
  return b.take(degree);
}

} // namespace

//------------------------------------------------------------------------------
QuadRule2D triangle_rule(int degree)
{
  if (degree < 1 || degree > 20) {
    throw std::invalid_argument("triangle_rule: supported degrees are 1..20");
  }
  switch (degree) {
  case 11:
    return table_rule(12);
  case 15:
  case 16:
    return table_rule(17);
  case 18:
    return table_rule(19);
  case 20:
    return conical_product_rule(11); // exact through degree 21
  default:
    return table_rule(degree);
  }
}

} // namespace crenrich
