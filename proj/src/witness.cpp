#include "pca/witness.hpp"

#include <sstream>

#include "pca/errors.hpp"

namespace pca {

AppRecord record_apply(Model& model, Element a, Element b, Fuel fuel,
                       std::string note) {
  AppRecord r;
  r.lhs = a;
  r.rhs = b;
  r.fuel = fuel;
  r.note = std::move(note);
  EvalOutcome o = model.apply(a, b, fuel);
  r.kind = o.kind();
  if (o.is_defined()) r.value = o.value();
  return r;
}

AppRecord record_coord(Model& model, Element a, Element b, const Nat& coord,
                       Fuel fuel, std::string note) {
  AppRecord r;
  r.lhs = a;
  r.rhs = b;
  r.coord = coord;
  r.fuel = fuel;
  r.note = std::move(note);
  auto o = model.coord_apply(a, b, coord, fuel);
  if (!o) throw PcaError("model '" + model.name() + "' has no coordinate probe");
  r.kind = o->kind();
  if (o->is_defined()) r.coord_value = o->value();
  return r;
}

ReplayReport replay_witness(Model& model, const Witness& w) {
  ReplayReport rep;
  for (std::size_t idx = 0; idx < w.transcript.size(); ++idx) {
    const AppRecord& r = w.transcript[idx];
    std::ostringstream os;
    if (r.coord) {
      auto o = model.coord_apply(r.lhs, r.rhs, *r.coord, r.fuel);
      if (!o) {
        rep.ok = false;
        rep.failed_index = idx;
        rep.detail = "coordinate probe unavailable on replay";
        return rep;
      }
      if (o->kind() != r.kind ||
          (o->is_defined() && (!r.coord_value || o->value() != *r.coord_value))) {
        os << "record " << idx << ": expected " << kind_name(r.kind);
        if (r.coord_value) os << " " << r.coord_value->get_str();
        os << ", got " << kind_name(o->kind());
        if (o->is_defined()) os << " " << o->value().get_str();
        rep.ok = false;
        rep.failed_index = idx;
        rep.detail = os.str();
        return rep;
      }
    } else {
      EvalOutcome o = model.apply(r.lhs, r.rhs, r.fuel);
      if (o.kind() != r.kind ||
          (o.is_defined() && (!r.value || o.value() != *r.value))) {
        os << "record " << idx << ": expected " << kind_name(r.kind);
        if (r.value) os << " " << model.show(*r.value);
        os << ", got " << kind_name(o.kind());
        if (o.is_defined()) os << " " << model.show(o.value());
        rep.ok = false;
        rep.failed_index = idx;
        rep.detail = os.str();
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace pca
