int cwe415_bug_worker_cleanup_c_work(int n) {
  char *buf = calloc(4, 4);
  if (n == 0) {
    free(buf);
  }
  buf = 0;
  free(buf);
  return 0;
}

int cwe415_bug_worker_cleanup_c_main(int c) {
  char *p = calloc(4, 4);
  free(p);
  free(p);
  return cwe415_bug_worker_cleanup_c_work(c);
}
