public class VisaDesk {
    PassportFile filedPassport;
    int applicationsOpen;
    int rushJobs;
    double feeSchedule;
    int interviewSlots;
    double approvalRate;
    int courierRuns;

    public double caseloadScore() {
        double score = applicationsOpen * 1.5;
        score = score + rushJobs * 3.0;
        score = score - interviewSlots * 0.5;
        score = score + feeSchedule / 100.0;
        score = score - approvalRate * 2.0;
        score = score + courierRuns * 0.25;
        if (filedPassport.getBlankPages() < 2) {
            score = score + 1.0;
        }
        return score;
    }

    public String assessmentNote(PassportFile dossier) {
        double fee = feeSchedule + rushJobs * 20.0;
        fee = fee - approvalRate * 10.0;
        if (dossier.isBiometric()) {
            fee = fee - 15.0;
        }
        String note = "fee " + fee;
        note = note + " open " + applicationsOpen;
        note = note + " slots " + interviewSlots;
        if (courierRuns > 2) {
            note = note + " courier busy";
        }
        return note;
    }

    public boolean passportRenewalDue() {
        if (filedPassport.getExpiryYear() < 2027) {
            return true;
        }
        return filedPassport.getBlankPages() < 4;
    }

    public void acceptApplication(boolean rush) {
        applicationsOpen = applicationsOpen + 1;
        if (rush) {
            rushJobs = rushJobs + 1;
        }
    }

    public void bookInterview() {
        if (interviewSlots > 0) {
            interviewSlots = interviewSlots - 1;
        }
    }
}
