int cwe415_bug_worker_cleanup_m_work(int n) {
  char *buf = malloc(16);
  if (n == 0) {
    free(buf);
  }
  buf = 0;
  free(buf);
  return 0;
}

int cwe415_bug_worker_cleanup_m_main(int c) {
  char *p = malloc(16);
  free(p);
  free(p);
  return cwe415_bug_worker_cleanup_m_work(c);
}
