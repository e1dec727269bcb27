int cwe416_ok_other_buffer_used_m_main(int c) {
  char *p = malloc(16);
  char *q = malloc(16);
  free(p);
  q[0] = 1;
  free(q);
  return 0;
}
