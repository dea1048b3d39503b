#pragma once

#include <stdexcept>
#include <string>

namespace pg {

// Base class for all workbench errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define PG_DEFINE_ERROR(Name)                                       \
  struct Name : Error {                                             \
    explicit Name(const std::string& m) : Error(#Name ": " + m) {}  \
  }

// pc-core
PG_DEFINE_ERROR(MalformedInput);
PG_DEFINE_ERROR(WeightViolation);
PG_DEFINE_ERROR(BadPrime);
PG_DEFINE_ERROR(ContextMismatch);
PG_DEFINE_ERROR(DeskScaleExceeded);

// structure
PG_DEFINE_ERROR(NotNormal);
PG_DEFINE_ERROR(NotMaximalClass);
PG_DEFINE_ERROR(RegularityUndecided);

// morphisms
PG_DEFINE_ERROR(RelationViolated);

// derivations
PG_DEFINE_ERROR(TargetNotAbelian);
PG_DEFINE_ERROR(TargetNotNormal);
PG_DEFINE_ERROR(RelatorNotKilled);
PG_DEFINE_ERROR(PreconditionMZN);
PG_DEFINE_ERROR(IterationEscapesModule);

// search
PG_DEFINE_ERROR(NotTwoGenerated);
PG_DEFINE_ERROR(UCentral);
PG_DEFINE_ERROR(UOrderWrong);
PG_DEFINE_ERROR(CentralizerNotMaximal);
PG_DEFINE_ERROR(NoD8Quotient);
PG_DEFINE_ERROR(ModuleNotInZN);
PG_DEFINE_ERROR(NoSuitableU);
PG_DEFINE_ERROR(TooSmall);
PG_DEFINE_ERROR(OracleInfeasible);

// oracle
PG_DEFINE_ERROR(LimitExceeded);
PG_DEFINE_ERROR(TooLarge);

// workbench
PG_DEFINE_ERROR(UnknownEntry);
PG_DEFINE_ERROR(BadParams);

#undef PG_DEFINE_ERROR

}  // namespace pg
