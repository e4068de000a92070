// Serializes query submissions: at most one result is applied, and it is
// always the one belonging to the latest submission, even when responses
// arrive out of order.

import type { QueryRequest, QueryResponse } from "./api.js";

export type QueryRunner = (request: QueryRequest) => Promise<QueryResponse>;

export interface QueryFlowHooks {
  onResult(response: QueryResponse, request: QueryRequest): void;
  onError(error: unknown, request: QueryRequest): void;
  onBusy?(busy: boolean): void;
}

export class QueryFlow {
  private ticket = 0;

  constructor(
    private readonly run: QueryRunner,
    private readonly hooks: QueryFlowHooks,
  ) {}

  get inFlight(): boolean {
    return this.ticket > 0 && this.settled < this.ticket;
  }

  private settled = 0;

  async submit(request: QueryRequest): Promise<void> {
    const ticket = ++this.ticket;
    this.hooks.onBusy?.(true);
    try {
      const response = await this.run(request);
      if (ticket === this.ticket) {
        this.hooks.onResult(response, request);
      }
    } catch (error) {
      if (ticket === this.ticket) {
        this.hooks.onError(error, request);
      }
    } finally {
      this.settled = Math.max(this.settled, ticket);
      if (ticket === this.ticket) {
        this.hooks.onBusy?.(false);
      }
    }
  }
}
