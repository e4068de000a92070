// Serializes query submissions: at most one result is applied, and it is
// always the one belonging to the latest submission, even when responses
// arrive out of order.
export class QueryFlow {
    constructor(run, hooks) {
        this.run = run;
        this.hooks = hooks;
        this.ticket = 0;
        this.settled = 0;
    }
    get inFlight() {
        return this.ticket > 0 && this.settled < this.ticket;
    }
    async submit(request) {
        const ticket = ++this.ticket;
        this.hooks.onBusy?.(true);
        try {
            const response = await this.run(request);
            if (ticket === this.ticket) {
                this.hooks.onResult(response, request);
            }
        }
        catch (error) {
            if (ticket === this.ticket) {
                this.hooks.onError(error, request);
            }
        }
        finally {
            this.settled = Math.max(this.settled, ticket);
            if (ticket === this.ticket) {
                this.hooks.onBusy?.(false);
            }
        }
    }
}
