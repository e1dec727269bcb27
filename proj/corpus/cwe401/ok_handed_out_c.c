void cwe401_ok_handed_out_c_give(char **out) {
  char *p = calloc(4, 4);
  *out = p;
}

int cwe401_ok_handed_out_c_main(int c) {
  return 0;
}
