#include "ltlnrm/ltl/formula.hpp"

namespace ltlnrm::ltl {
namespace {

void emit(const Formula& f, std::string& out) {
  const auto kids = f.children();
  switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f.symbol().name; return;
    case Op::Not:
      out += '!';
      emit(kids[0], out);
      return;
    case Op::And:
    case Op::Or: {
      const char* sep = f.op() == Op::And ? " & " : " | ";
      out += '(';
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += sep;
        emit(kids[i], out);
      }
      out += ')';
      return;
    }
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
      out += f.op() == Op::Next ? "(X " : f.op() == Op::Eventually ? "(F " : "(G ";
      emit(kids[0], out);
      out += ')';
      return;
    case Op::Until:
      out += '(';
      emit(kids[0], out);
      out += " U ";
      emit(kids[1], out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  emit(f, out);
  return out;
}

}  // namespace ltlnrm::ltl
